#include "qdisc/serialize.hpp"

#include <sstream>

namespace qdisc {

namespace {

json pair_of(cplx c) { return json::array({c.real(), c.imag()}); }

cplx cplx_of(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidArgument("json: expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json samples_json(const std::vector<cplx>& s) {
    json a = json::array();
    for (cplx c : s) a.push_back(pair_of(c));
    return a;
}

}  // namespace

json to_json(const NormalPoly& f) {
    json terms = json::array();
    for (const auto& [k, c] : f.terms()) terms.push_back({k.first, k.second, c.real(), c.imag()});
    return {{"q", f.q()}, {"terms", terms}};
}

NormalPoly normal_poly_from_json(const json& j) {
    NormalPoly f(j.at("q").get<double>());
    for (const auto& t : j.at("terms")) {
        if (t.size() != 4) throw InvalidArgument("json: term must be [j, k, re, im]");
        f.add_term(t[0].get<int>(), t[1].get<int>(), {t[2].get<double>(), t[3].get<double>()});
    }
    return f;
}

json to_json(const PolarFunction& f) {
    json modes = json::object();
    for (int m : f.modes()) modes[std::to_string(m)] = samples_json(f.samples(m));
    return {{"q", f.ctx().q}, {"N", f.levels()}, {"M", f.ctx().angular_cutoff}, {"modes", modes}};
}

PolarFunction polar_from_json(const json& j) {
    QContext ctx;
    ctx.q = j.at("q").get<double>();
    ctx.radial_levels = j.at("N").get<int>();
    ctx.angular_cutoff = j.at("M").get<int>();
    ctx.validate();
    PolarFunction f(ctx);
    for (const auto& [key, arr] : j.at("modes").items()) {
        std::vector<cplx> s;
        for (const auto& v : arr) s.push_back(cplx_of(v));
        if (static_cast<int>(s.size()) != ctx.radial_levels) throw InvalidArgument("json: mode sample count differs from N");
        f.set_mode(std::stoi(key), std::move(s));
    }
    return f;
}

json to_json(const RepMatrix& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r)
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
            data.push_back(m.entries(r, c).real());
            data.push_back(m.entries(r, c).imag());
        }
    return {{"rows", m.entries.rows()}, {"cols", m.entries.cols()}, {"data", data}};
}

std::string to_csv(const RepMatrix& m) {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
            if (c) os << ',';
            os << m.entries(r, c).real() << ',' << m.entries(r, c).imag();
        }
        os << '\n';
    }
    return os.str();
}

json to_json(const FourierImage& g) {
    json values = json::object();
    for (const auto& [m, v] : g.values) values[std::to_string(m)] = samples_json(v);
    return {{"q", g.ctx.q}, {"N", g.ctx.radial_levels}, {"M", g.ctx.angular_cutoff},
            {"nodes", g.nodes}, {"weights", g.weights}, {"values", values}};
}

json to_json(const FormalSeries& s) {
    json coeffs = json::array();
    for (int k = 0; k <= s.order(); ++k) coeffs.push_back({{"order", k}, {"poly", to_json(s[k])}});
    return {{"q", s.q}, {"K", s.order()}, {"coeffs", coeffs}};
}

}  // namespace qdisc

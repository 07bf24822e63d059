#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdisc/forms.hpp"
#include "qdisc/harmonic.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"
#include "qdisc/serialize.hpp"
#include "qdisc/verify.hpp"

using namespace qdisc;

namespace {

struct Common {
    double q = 0.5;
    int n = 64;
    int m = 16;
    std::string json_path;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--q", c.q, "deformation parameter, 0 < q < 1")->capture_default_str();
    app->add_option("--n", c.n, "radial levels")->capture_default_str();
    app->add_option("--m", c.m, "angular cutoff")->capture_default_str();
    app->add_option("--json", c.json_path, "write JSON output to this path");
}

QContext context(const Common& c) {
    QContext ctx;
    ctx.q = c.q;
    ctx.radial_levels = c.n;
    ctx.angular_cutoff = c.m;
    ctx.validate();
    return ctx;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

int cmd_eval(const std::string& expr, bool polar, const Common& c) {
    NormalPoly f = parse_expr(expr, c.q);
    if (!polar) {
        std::cout << f.to_string() << '\n';
        if (!c.json_path.empty()) write_file(c.json_path, to_json(f).dump(2) + "\n");
        return 0;
    }
    PolarFunction p = to_polar(f, context(c));
    std::printf("%6s %6s %24s %24s\n", "mode", "n", "re", "im");
    for (int m : p.modes())
        for (int n = 0; n < p.levels(); ++n) {
            cplx v = p.sample(m, n);
            std::printf("%6d %6d %24.16e %24.16e\n", m, n, v.real(), v.imag());
        }
    if (!c.json_path.empty()) write_file(c.json_path, to_json(p).dump(2) + "\n");
    return 0;
}

int cmd_solve(const std::string& kind, const std::string& rhs, const Common& c, int margin) {
    QContext ctx = context(c);
    NormalPoly f = parse_expr(rhs, c.q);
    PolarFunction fp = to_polar(f, ctx);
    json out = {{"kind", kind}, {"rhs", rhs}, {"q", c.q}, {"N", c.n}, {"M", c.m}, {"route", "linear"}};
    if (kind == "poisson") {
        PolarFunction u = poisson_solve_linear(fp);
        PolarFunction b = box_apply(u);
        double res = 0.0, sc = std::max(fp.max_abs(), 1e-300);
        for (int m : b.modes())
            for (int n = 0; n < ctx.radial_levels - margin; ++n) res = std::max(res, std::abs(b.sample(m, n) - fp.sample(m, n)));
        out["residual"] = fp.max_abs() > 0.0 ? res / sc : res;
        out["solution"] = to_json(u);
    } else {
        PolarFunction u = dbar_solve_linear(fp);
        DbarReport r = dbar_report(fp, u, margin);
        out["residual"] = r.dbar_residual;
        out["orthogonality_defect"] = r.orthogonality_defect;
        out["solution"] = to_json(u);
    }
    std::string text = out.dump(2) + "\n";
    if (!c.json_path.empty()) write_file(c.json_path, text);
    std::cout << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdisc: function theory on the quantum disc"};
    app.require_subcommand(1);

    Common ce, cs, cv;
    std::string expr;
    bool polar = false;
    auto* eval = app.add_subcommand("eval", "normal-order an expression (or tabulate its polar samples)");
    eval->add_option("expr", expr, "expression in z, z*, y, q, i")->required();
    eval->add_flag("--polar", polar, "print polar samples");
    add_common(eval, ce);

    std::string kind, rhs;
    int margin = 4;
    auto* solve = app.add_subcommand("solve", "solve box u = f or dbar u = f dz*");
    solve->add_option("kind", kind, "poisson | dbar")->required()->check(CLI::IsMember({"poisson", "dbar"}));
    solve->add_option("--rhs", rhs, "right-hand side expression")->required();
    solve->add_option("--margin", margin, "edge levels excluded from residuals")->capture_default_str();
    add_common(solve, cs);

    std::string suite = "all", csv_path;
    VerifyConfig vc;
    double tol = 0.0;
    auto* verify = app.add_subcommand("verify", "run numerical checks and report");
    verify->add_option("--suite", suite, "qspecial | algebra | stokes | spectral | green | eigen | fourier | berezin | all")
        ->capture_default_str();
    add_common(verify, cv);
    verify->add_option("--order", vc.order, "star-product order K")->capture_default_str();
    verify->add_option("--nodes", vc.nodes, "rho quadrature nodes")->capture_default_str();
    auto* tol_opt = verify->add_option("--tol", tol, "override every tolerance");
    verify->add_option("--seed", vc.seed, "RNG seed")->capture_default_str();
    verify->add_option("--csv", csv_path, "write CSV report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*eval) return cmd_eval(expr, polar, ce);
        if (*solve) return cmd_solve(kind, rhs, cs, margin);
        if (*verify) {
            if (!is_suite(suite)) {
                std::cerr << "unknown suite '" << suite << "'\n" << verify->help();
                return 2;
            }
            vc.q = cv.q;
            vc.n = cv.n;
            vc.m = cv.m;
            if (tol_opt->count()) vc.tol = tol;
            VerifyReport r = run_verify(suite, vc);
            nlohmann::json j = to_json(r);
            if (!cv.json_path.empty()) write_file(cv.json_path, j.dump(2) + "\n");
            if (!csv_path.empty()) write_file(csv_path, to_csv(r));
            for (const auto& s : r.suites)
                for (const auto& t : s.tests)
                    std::printf("%-4s %-9s %-34s %12.3e <= %9.1e\n", t.pass ? "ok" : "FAIL", s.name.c_str(), t.id.c_str(),
                                t.value, t.bound);
            std::printf("%s\n", r.pass() ? "all checks passed" : "some checks failed");
            return r.pass() ? 0 : 1;
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error at " << e.position() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#pragma once

#include <string>

#include "json.hpp"

#include "qdisc/berezin.hpp"
#include "qdisc/fourier.hpp"
#include "qdisc/ncpoly.hpp"
#include "qdisc/polar.hpp"
#include "qdisc/rep.hpp"

namespace qdisc {

using json = nlohmann::json;

// {q, terms: [[j, k, re, im], ...]}
json to_json(const NormalPoly& f);
NormalPoly normal_poly_from_json(const json& j);

// {q, N, M, modes: {"m": [[re, im], ...]}}
json to_json(const PolarFunction& f);
PolarFunction polar_from_json(const json& j);

// {rows, cols, data: [re, im, re, im, ...]} row-major
json to_json(const RepMatrix& m);
std::string to_csv(const RepMatrix& m);

json to_json(const FourierImage& g);
json to_json(const FormalSeries& s);

}  // namespace qdisc

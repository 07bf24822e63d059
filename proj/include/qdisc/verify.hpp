#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qdisc {

struct VerifyConfig {
    double q = 0.5;
    int n = 64;      // radial levels
    int m = 16;      // angular cutoff
    int order = 4;   // star-product truncation K
    int nodes = 128; // rho quadrature nodes
    std::optional<double> tol;  // replaces every bound when set
    std::uint64_t seed = 20240501;
};

struct CheckResult {
    std::string id;
    std::string paper_ref;  // short name of the identity being checked
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<CheckResult> tests;
    bool pass() const;
};

struct VerifyReport {
    VerifyConfig config;
    std::vector<SuiteResult> suites;
    bool pass() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// InvalidArgument for an unknown suite
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);
// "all" runs every suite
VerifyReport run_verify(const std::string& suite, const VerifyConfig& cfg);

nlohmann::json to_json(const VerifyReport& r);
std::string to_csv(const VerifyReport& r);

}  // namespace qdisc

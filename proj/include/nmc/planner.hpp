#pragma once

#include <cstdint>

namespace nmc {

// Overridable big-O constants in the parameter formulas. The source
// formulas are asymptotic; defaults of 1 keep the planner conservative and
// reproducible.
struct PlannerConstants {
    double c_t = 1.0;
    double c_k = 1.0;
};

struct PlannedParams {
    uint64_t t0 = 0;        // saturated at uint64 max for huge families
    bool t0_saturated = false;
    double log2_t0 = 0.0;   // always valid, drives the k0 formula
    int k0 = 0;
    PlannerConstants constants;
};

// Binary entropy h(p) with h(0) = h(1) = 0.
double binary_entropy(double p);

// Largest safe message length for block length n, blob size t, error eps,
// distance delta:  floor(n(1 - h(delta)) - log2 t - 3 log2(1/eps) - c_k).
int plan_k0(int n, uint64_t t, double eps, double delta, double c_k);

// Smallest blob size for a family of log2-size family_log_size with code
// failure probability eta:  ceil(c_t * eps^-6 * (family_log_size + n + log2(1/eta))).
uint64_t plan_t0(int n, double family_log_size, double eps, double eta, double c_t);

// Both together; throws ValidationError when the resulting k0 < 1
// ("parameters infeasible") or inputs are out of range. k0 is clamped to n.
PlannedParams plan_parameters(int n, double family_log_size, double eps, double eta, double delta,
                              const PlannerConstants& constants = {});

}  // namespace nmc

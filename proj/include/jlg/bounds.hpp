#pragma once

#include "jlg/bivariate.hpp"
#include "jlg/marginal.hpp"

#include <vector>

namespace jlg {

// Lower bounds on the no-failure probability p(all C(n,2) distances kept).
// Bounds are reported raw, NOT clamped to [0,1]: whether a bound is positive
// is exactly the question of interest, and clamping would hide it.

enum class Parity { even, odd };

// 1 - C(n,2) (1-mu): one Bonferroni term per pairwise failure.
double marginal_lower_bound(long long n, double mu);

// Failure events paired two at a time, each pair bounded through
// p(F,F') <= (1-mu)^2 <=> p(S and S') >= mu^2:
//   even C(n,2):  1 - C/2 (1-mu^2)
//   odd  C(n,2):  1 - [ (C-1)/2 (1-mu^2) + (1-mu) ]   (one unpaired failure)
double bivariate_lower_bound(long long n, double mu);

// bivariate - marginal, in closed form: (C/2) (1-mu)^2 for even C(n,2) and
// ((C-1)/2) (1-mu)^2 for odd. The closed form survives where the direct
// subtraction of two bounds near 1 would lose every digit.
double bound_delta(long long n, double mu);

// Bound obtained if the pairing argument extended to triples of successes,
// p(S,S',S'') >= mu^3. That inequality is conjectural (only three special
// cases are proven), so the value carries an explicit flag. Leftover events
// when C(n,2) is not divisible by 3 are bounded as a pair and/or singleton,
// whichever keeps the bound largest.
struct TrivariateBound {
    double value = 0.0;
    bool conditional_on_conjecture = true;
};
TrivariateBound trivariate_lower_bound(long long n, double mu);

// 1 - C/2 (1-mu): the value the pairing bound takes when every paired
// correlation is perfect (collinear point sets). NOT a lower bound for
// general geometry, hence the flag.
struct GeometryValue {
    double value = 0.0;
    bool is_general_bound = false;
};
GeometryValue geometry_comparison_value(long long n, double mu);

// One rho_sq per failure pair {F_{2i-1}, F_{2i}} in a chosen pairing of the
// C(n,2) events; length must be floor(C(n,2)/2). The indices of the pairing
// may be permuted freely (the no-failure probability does not change); this
// module evaluates the caller's pairing as given.
struct PairingAssignment {
    std::vector<double> rho_sq;
};

// 1 - sum_i (1 - p(S_{2i-1} and S_{2i})) - [C odd: (1-mu)], each joint
// probability from the bivariate model at (spec.k, spec.epsilon). At least
// as large as bivariate_lower_bound since every p >= mu^2.
double data_dependent_lower_bound(const EmbeddingSpec& spec,
                                  const PairingAssignment& pairing);

struct BoundReport {
    EmbeddingSpec spec;
    Probability mu;
    double failure = 0.0; // two-tail high-precision 1 - mu
    double marginal_lb = 0.0;
    double bivariate_lb = 0.0;
    double delta = 0.0;
    double trivariate_lb = 0.0;
    bool trivariate_conditional = true;
    Parity pair_count_parity = Parity::even;
};

// Builds the full report. All bound formulas are evaluated from the
// high-precision two-tail failure probability f, with 1-mu^2 = f(2-f) and
// 1-mu^3 = f(1+mu+mu^2) expanded so no digit is lost when mu is near 1.
BoundReport make_bound_report(const EmbeddingSpec& spec);

} // namespace jlg

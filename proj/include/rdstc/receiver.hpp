#ifndef RDSTC_RECEIVER_HPP
#define RDSTC_RECEIVER_HPP

#include <vector>

#include "rdstc/channel.hpp"
#include "rdstc/complex_mat.hpp"
#include "rdstc/modem.hpp"
#include "rdstc/rng.hpp"
#include "rdstc/stc_relay.hpp"

namespace rdstc {

// One linear receive filter per transmitted symbol; each filter spans the
// full stacked receive vector.
struct FilterBank {
    std::vector<ComplexMat> w;
};

// Model-exact second-order statistics of the stacked receive vector.
struct CorrelationPair {
    ComplexMat autocorr;             // E[r r^H]
    std::vector<ComplexMat> cross;   // E[r s_j*], one column per symbol
};

struct AdaptState {
    FilterBank filters;
    RandomizedCode code;
    double beta = 0.05;  // filter step size
    double mu = 0.01;    // code step size
    long iteration = 0;
};

// Closed-form E[r r^H] and E[r s_j*] for the block: signal outer products
// plus the exact covariance of the destination noise and the amplified,
// coded relay noise.
CorrelationPair analytic_correlations(const EquivalentChannel& eq, const NoiseModel& noise);

// w_j = E[r r^H]^{-1} E[r s_j*].
ComplexMat mmse_filter(const CorrelationPair& corr, int symbol);

// E|s_j - w^H r|^2 at the given filter; clamped at zero (warns if the
// unclamped value is below -1e-9).
double mmse_value(const CorrelationPair& corr, const ComplexMat& w, int symbol);

// Matched filters d_j / ||d_j||^2, the adaptive loop's starting point.
FilterBank matched_init_filters(const EquivalentChannel& eq);

// Rescales every code matrix by a common factor so the equivalent-form power
// meets the budget exactly. Throws DegenerateCodeError on a zero code.
RandomizedCode normalize_code(const RandomizedCode& code);

// Gradient of sum_j |e_j|^2 with respect to conj(R_k), for the received
// vector regenerated from the given relay input vectors with everything else
// frozen. `errors[j]` must equal s_ref[j] - w_j^H r for the same r.
std::vector<ComplexMat> code_gradient(const EquivalentChannel& eq, const FilterBank& filters,
                                      const std::vector<cdouble>& errors,
                                      const std::vector<ComplexMat>& relay_inputs);

// e_j = s_ref_j - w_j^H r for each symbol.
std::vector<cdouble> symbol_errors(const FilterBank& filters, const ComplexMat& r,
                                   const SymbolVec& s_ref);

// LMS recursion w_j <- w_j + beta * conj(e_j) * r.
void sg_step_filter(AdaptState& state, const ComplexMat& r, const SymbolVec& s_ref);

// Code recursion: descends the instantaneous squared error along the
// signal-part relay inputs (relay noise is unobservable at the destination),
// then renormalizes to the power budget.
void sg_step_code(AdaptState& state, const ComplexMat& r, const SymbolVec& s_ref,
                  const EquivalentChannel& eq);

// Joint MSE-optimal code for fixed filters, subject to the equivalent-form
// power budget. The stationarity condition is solved over the vectorized
// code parameters; the multiplier is found by bisection when the budget
// binds.
RandomizedCode rstc_closed_form(const EquivalentChannel& eq, const FilterBank& filters,
                                const NoiseModel& noise, double power_budget);

// Analytic MSE objective sum_j E|s_j - w_j^H r|^2 for an arbitrary code with
// the filters held fixed; shared by the closed form and its tests.
double code_mse_objective(const ChannelSet& channels, const RandomizedCode& code,
                          const AmplifyGain& gain, bool direct_link, const FilterBank& filters,
                          const NoiseModel& noise);

struct TrainOptions {
    int pilots = 200;
    double divergence_factor = 10.0;
};

// Supervised pilot training: per pilot vector the received signal is
// regenerated under the current code (the relay is assumed to apply the
// latest fed-back matrix), then the filter and code recursions run on it.
AdaptState alrrmo_train(AdaptState state, const ChannelSet& channels, const AmplifyGain& gain,
                        const NoiseModel& noise, bool direct_link, RandomStream& rng,
                        const TrainOptions& options = {});

SymbolVec detect_symbols(const FilterBank& filters, const ComplexMat& r);

}  // namespace rdstc

#endif  // RDSTC_RECEIVER_HPP

#include "rdstc/receiver.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "rdstc/errors.hpp"

namespace rdstc {

namespace {

// Slot block of a stacked filter: rows [offset, offset + N) where offset
// skips the direct-link block when present.
ComplexMat filter_slot_block(const ComplexMat& w, const EquivalentChannel& eq, int slot) {
    int n = eq.antennas;
    int offset = (eq.direct_link ? n : 0) + slot * n;
    ComplexMat block(n, 1);
    for (int r = 0; r < n; ++r) block[r] = w[offset + r];
    return block;
}

}  // namespace

CorrelationPair analytic_correlations(const EquivalentChannel& eq, const NoiseModel& noise) {
    int rx_len = eq.rx_length();
    int n = eq.antennas;

    CorrelationPair corr;
    corr.autocorr = ComplexMat(rx_len, rx_len);
    for (int j = 0; j < n; ++j) {
        ComplexMat d = eq.per_symbol_channel.col(j);
        corr.cross.push_back(kSymbolPower * d);
        for (int a = 0; a < rx_len; ++a)
            for (int b = 0; b < rx_len; ++b)
                corr.autocorr(a, b) += kSymbolPower * d[a] * std::conj(d[b]);
    }

    // Destination noise is white; the relay-path noise is the relay AWGN
    // pushed through amplification, coding and the second hop.
    for (int i = 0; i < rx_len; ++i) corr.autocorr(i, i) += noise.sigma2;
    int relay_offset = eq.direct_link ? n : 0;
    double g2 = eq.amplify_gain * eq.amplify_gain;
    for (int k = 0; k < eq.relays; ++k) {
        const ComplexMat& b = eq.coded_relay_channel[static_cast<std::size_t>(k)];
        for (int a = 0; a < b.rows(); ++a)
            for (int c = 0; c < b.rows(); ++c) {
                cdouble acc = 0.0;
                for (int m = 0; m < b.cols(); ++m) acc += b(a, m) * std::conj(b(c, m));
                corr.autocorr(relay_offset + a, relay_offset + c) += g2 * noise.sigma2 * acc;
            }
    }
    return corr;
}

ComplexMat mmse_filter(const CorrelationPair& corr, int symbol) {
    return hermitian_solve(corr.autocorr, corr.cross[static_cast<std::size_t>(symbol)]);
}

double mmse_value(const CorrelationPair& corr, const ComplexMat& w, int symbol) {
    const ComplexMat& p = corr.cross[static_cast<std::size_t>(symbol)];
    double value = kSymbolPower - 2.0 * dot(w, p).real() + dot(w, corr.autocorr * w).real();
    if (value < -1e-9)
        std::cerr << "mmse_value: clamping negative MSE " << value << " to zero\n";
    return value < 0.0 ? 0.0 : value;
}

FilterBank matched_init_filters(const EquivalentChannel& eq) {
    FilterBank bank;
    for (int j = 0; j < eq.antennas; ++j) {
        ComplexMat d = eq.per_symbol_channel.col(j);
        double power = norm2(d);
        bank.w.push_back(power > 0.0 ? (1.0 / power) * d : d);
    }
    return bank;
}

RandomizedCode normalize_code(const RandomizedCode& code) {
    double power = equivalent_code_power(code);
    if (!(power > 0.0)) throw DegenerateCodeError("normalize_code: code has zero power");
    double scale = std::sqrt(code.power_budget / power);
    RandomizedCode out = code;
    for (auto& r : out.matrices) r = scale * r;
    return out;
}

std::vector<cdouble> symbol_errors(const FilterBank& filters, const ComplexMat& r,
                                   const SymbolVec& s_ref) {
    std::vector<cdouble> errors(s_ref.size());
    for (std::size_t j = 0; j < s_ref.size(); ++j) errors[j] = s_ref[j] - dot(filters.w[j], r);
    return errors;
}

std::vector<ComplexMat> code_gradient(const EquivalentChannel& eq, const FilterBank& filters,
                                      const std::vector<cdouble>& errors,
                                      const std::vector<ComplexMat>& relay_inputs) {
    int n = eq.antennas;
    std::vector<ComplexMat> grad(static_cast<std::size_t>(eq.relays), ComplexMat::zero(n, n));

    for (int k = 0; k < eq.relays; ++k) {
        const ComplexMat& g_mat = eq.channels.relay_dest[static_cast<std::size_t>(k)];
        const ComplexMat& u = relay_inputs[static_cast<std::size_t>(k)];
        for (int j = 0; j < n; ++j) {
            cdouble e = errors[static_cast<std::size_t>(j)];
            for (int t = 0; t < eq.slots; ++t) {
                ComplexMat wt = filter_slot_block(filters.w[static_cast<std::size_t>(j)], eq, t);
                if (!eq.structure.slot_is_conjugate(t)) {
                    // Slot carries G R P_t u: gradient -e (G^H w_t)(P_t u)^H.
                    ComplexMat left = matmul(adjoint(g_mat), wt);
                    ComplexMat right =
                        matmul(eq.structure.direct[static_cast<std::size_t>(t)], u);
                    for (int a = 0; a < n; ++a)
                        for (int c = 0; c < n; ++c)
                            grad[static_cast<std::size_t>(k)](a, c) -=
                                e * left[a] * std::conj(right[c]);
                } else {
                    // Slot carries conj(G R Q_t) u: gradient
                    // -conj(e) conj(G^T w_t)(conj(Q_t) u)^T.
                    ComplexMat left = matmul(adjoint(conjugate(g_mat)), wt);
                    ComplexMat right =
                        matmul(conjugate(eq.structure.conjugate[static_cast<std::size_t>(t)]), u);
                    for (int a = 0; a < n; ++a)
                        for (int c = 0; c < n; ++c)
                            grad[static_cast<std::size_t>(k)](a, c) -=
                                std::conj(e) * std::conj(left[a]) * right[c];
                }
            }
        }
    }
    return grad;
}

void sg_step_filter(AdaptState& state, const ComplexMat& r, const SymbolVec& s_ref) {
    if (state.beta == 0.0) return;
    auto errors = symbol_errors(state.filters, r, s_ref);
    for (std::size_t j = 0; j < s_ref.size(); ++j) {
        ComplexMat& w = state.filters.w[j];
        cdouble step = state.beta * std::conj(errors[j]);
        for (int i = 0; i < w.rows(); ++i) w[i] += step * r[i];
    }
}

void sg_step_code(AdaptState& state, const ComplexMat& r, const SymbolVec& s_ref,
                  const EquivalentChannel& eq) {
    if (state.mu == 0.0) return;
    auto errors = symbol_errors(state.filters, r, s_ref);

    // Signal part of the relay inputs; the relay noise realization is not
    // observable at the destination.
    std::vector<ComplexMat> relay_inputs;
    ComplexMat svec = ComplexMat::column(s_ref);
    for (int k = 0; k < eq.relays; ++k)
        relay_inputs.push_back(eq.amplify_gain *
                               matmul(eq.channels.source_relay[static_cast<std::size_t>(k)], svec));

    auto grad = code_gradient(eq, state.filters, errors, relay_inputs);
    for (int k = 0; k < eq.relays; ++k) {
        auto& rk = state.code.matrices[static_cast<std::size_t>(k)];
        rk = rk - state.mu * grad[static_cast<std::size_t>(k)];
    }
    state.code = normalize_code(state.code);
}

namespace {

// Real parameter layout for the closed form: per relay, row-major over the
// N x N matrix, real part then imaginary part (interleaved).
RandomizedCode code_from_params(const std::vector<double>& x, int antennas, int relays,
                                double budget) {
    RandomizedCode code;
    code.power_budget = budget;
    std::size_t at = 0;
    for (int k = 0; k < relays; ++k) {
        ComplexMat r(antennas, antennas);
        for (int i = 0; i < r.size(); ++i) {
            r[i] = {x[at], x[at + 1]};
            at += 2;
        }
        code.matrices.push_back(r);
    }
    return code;
}

// Stacked error-coefficient vector whose squared norm (plus a filter-only
// constant) is the MSE objective; affine in the real code parameters.
ComplexMat objective_vector(const ChannelSet& channels, const RandomizedCode& code,
                            const AmplifyGain& gain, bool direct_link, const FilterBank& filters,
                            const NoiseModel& noise) {
    EquivalentChannel eq = build_equivalent_channel(channels, code, gain, direct_link);
    int n = eq.antennas;
    double sigma = std::sqrt(noise.sigma2);

    std::vector<cdouble> rows;
    for (int j = 0; j < n; ++j) {
        const ComplexMat& w = filters.w[static_cast<std::size_t>(j)];
        // Symbol coefficients w^H d_l, with the desired-symbol target 1.
        for (int l = 0; l < n; ++l) {
            cdouble c = dot(w, eq.per_symbol_channel.col(l));
            rows.push_back(std::sqrt(kSymbolPower) * ((l == j ? 1.0 : 0.0) - c));
        }
        // Relay-noise coefficients g * B_k^H w restricted to the relay rows.
        for (int k = 0; k < eq.relays; ++k) {
            const ComplexMat& b = eq.coded_relay_channel[static_cast<std::size_t>(k)];
            ComplexMat wrel(b.rows(), 1);
            int offset = eq.direct_link ? n : 0;
            for (int i = 0; i < b.rows(); ++i) wrel[i] = w[offset + i];
            ComplexMat coeff = matmul(adjoint(b), wrel);
            for (int i = 0; i < coeff.rows(); ++i)
                rows.push_back(sigma * eq.amplify_gain * coeff[i]);
        }
    }
    return ComplexMat::column(rows);
}

double filter_noise_floor(const FilterBank& filters, const NoiseModel& noise) {
    double acc = 0.0;
    for (const auto& w : filters.w) acc += noise.sigma2 * norm2(w);
    return acc;
}

}  // namespace

double code_mse_objective(const ChannelSet& channels, const RandomizedCode& code,
                          const AmplifyGain& gain, bool direct_link, const FilterBank& filters,
                          const NoiseModel& noise) {
    ComplexMat v = objective_vector(channels, code, gain, direct_link, filters, noise);
    return norm2(v) + filter_noise_floor(filters, noise);
}

RandomizedCode rstc_closed_form(const EquivalentChannel& eq, const FilterBank& filters,
                                const NoiseModel& noise, double power_budget) {
    int n = eq.antennas;
    int relays = eq.relays;
    int params = 2 * relays * n * n;
    AmplifyGain gain{eq.amplify_gain};
    double power_factor = n * eq.slots;  // equivalent power = power_factor * ||x||^2

    // The objective vector is affine in the real parameters; sample it at the
    // origin and along each coordinate to recover the affine map exactly.
    std::vector<double> x0(static_cast<std::size_t>(params), 0.0);
    ComplexMat v0 = objective_vector(eq.channels, code_from_params(x0, n, relays, power_budget),
                                     gain, eq.direct_link, filters, noise);
    int rows = v0.rows();
    ComplexMat vmap(rows, params);
    for (int m = 0; m < params; ++m) {
        std::vector<double> xm(static_cast<std::size_t>(params), 0.0);
        xm[static_cast<std::size_t>(m)] = 1.0;
        ComplexMat vm = objective_vector(eq.channels, code_from_params(xm, n, relays, power_budget),
                                         gain, eq.direct_link, filters, noise);
        for (int i = 0; i < rows; ++i) vmap(i, m) = vm[i] - v0[i];
    }

    // Normal equations of ||v0 + V x||^2 over real x.
    ComplexMat quad(params, params);
    ComplexMat lin(params, 1);
    for (int a = 0; a < params; ++a) {
        for (int b = 0; b < params; ++b) {
            cdouble acc = 0.0;
            for (int i = 0; i < rows; ++i) acc += std::conj(vmap(i, a)) * vmap(i, b);
            quad(a, b) = acc.real();
        }
        cdouble acc = 0.0;
        for (int i = 0; i < rows; ++i) acc += std::conj(vmap(i, a)) * v0[i];
        lin[a] = -acc.real();
    }

    auto solve_at = [&](double lambda) {
        ComplexMat ridge = quad;
        for (int i = 0; i < params; ++i) ridge(i, i) += lambda * power_factor;
        ComplexMat sol = hermitian_solve(ridge, lin);
        std::vector<double> x(static_cast<std::size_t>(params));
        double nrm2 = 0.0;
        for (int i = 0; i < params; ++i) {
            x[static_cast<std::size_t>(i)] = sol[i].real();
            nrm2 += sol[i].real() * sol[i].real();
        }
        return std::pair<std::vector<double>, double>(std::move(x), power_factor * nrm2);
    };

    auto [x_free, power_free] = solve_at(0.0);
    if (power_free <= power_budget * (1.0 + 1e-8))
        return code_from_params(x_free, n, relays, power_budget);

    double lo = 0.0;
    double hi = 1.0;
    while (solve_at(hi).second > power_budget) {
        hi *= 10.0;
        if (hi > 1e12)
            throw InfeasibleConstraintError("rstc_closed_form: multiplier not bracketed");
    }
    std::vector<double> x_best = x_free;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        auto [x_mid, power_mid] = solve_at(mid);
        x_best = std::move(x_mid);
        if (std::abs(power_mid - power_budget) <= 1e-8 * power_budget) break;
        if (power_mid > power_budget)
            lo = mid;
        else
            hi = mid;
    }
    return code_from_params(x_best, n, relays, power_budget);
}

AdaptState alrrmo_train(AdaptState state, const ChannelSet& channels, const AmplifyGain& gain,
                        const NoiseModel& noise, bool direct_link, RandomStream& rng,
                        const TrainOptions& options) {
    if (options.pilots < 1) throw std::invalid_argument("alrrmo_train: pilot count must be >= 1");
    if (state.beta < 0.0 || state.mu < 0.0)
        throw std::invalid_argument("alrrmo_train: step sizes must be nonnegative");

    // Static channel fields only; the gradient does not depend on the
    // current code, so one build serves the whole run.
    EquivalentChannel env = build_equivalent_channel(channels, state.code, gain, direct_link);

    int n = env.antennas;
    double initial_power = -1.0;
    double running = 0.0;

    for (int i = 0; i < options.pilots; ++i) {
        BitBlock bits(static_cast<std::size_t>(2 * n));
        for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
        SymbolVec s = modulate(bits);

        ComplexMat r =
            assemble_received_vector(channels, state.code, gain, s, noise, rng, direct_link);

        double error_power = 0.0;
        for (cdouble e : symbol_errors(state.filters, r, s)) error_power += std::norm(e);

        sg_step_code(state, r, s, env);
        sg_step_filter(state, r, s);
        ++state.iteration;

        if (initial_power < 0.0) {
            initial_power = std::max(error_power, 1e-9);
            running = error_power;
        } else {
            running = 0.9 * running + 0.1 * error_power;
        }
        if (running > options.divergence_factor * initial_power)
            throw DivergenceError("alrrmo_train: running error power exceeded divergence bound");
    }
    return state;
}

SymbolVec detect_symbols(const FilterBank& filters, const ComplexMat& r) {
    SymbolVec out;
    out.reserve(filters.w.size());
    for (const auto& w : filters.w) out.push_back(hard_detect(dot(w, r)));
    return out;
}

}  // namespace rdstc

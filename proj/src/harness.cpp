#include "rdstc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rdstc/errors.hpp"
#include "rdstc/feedback.hpp"
#include "rdstc/receiver.hpp"

namespace rdstc {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::SM: return "sm";
        case Scheme::STC_AF: return "stc-af";
        case Scheme::RSTC_FIXED: return "rstc";
        case Scheme::ALRRMO: return "alrrmo";
    }
    return "unknown";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "sm") return Scheme::SM;
    if (name == "stc-af") return Scheme::STC_AF;
    if (name == "rstc") return Scheme::RSTC_FIXED;
    if (name == "alrrmo") return Scheme::ALRRMO;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::vector<std::string> validate_config(const SimConfig& config) {
    if (config.antennas != 2)
        throw std::invalid_argument("config: only 2 antennas per node are supported");
    if (config.relays < 1) throw std::invalid_argument("config: relays must be >= 1");
    if (config.snr_db.empty()) throw std::invalid_argument("config: SNR list is empty");
    if (config.min_trials < 1 || config.max_trials < config.min_trials)
        throw std::invalid_argument("config: trial bounds invalid");
    if (config.min_bit_errors < 1) throw std::invalid_argument("config: min_bit_errors must be >= 1");
    if (config.pilots < 1) throw std::invalid_argument("config: pilots must be >= 1");
    if (config.payload < 1) throw std::invalid_argument("config: payload must be >= 1");
    if (config.beta < 0.0 || config.mu < 0.0)
        throw std::invalid_argument("config: step sizes must be nonnegative");
    if (config.feedback_bits < 1) throw std::invalid_argument("config: feedback_bits must be >= 1");
    if (!(config.feedback_error_prob >= 0.0 && config.feedback_error_prob <= 1.0))
        throw std::invalid_argument("config: feedback_error_prob outside [0, 1]");
    if (!(config.relay_power_budget > 0.0))
        throw std::invalid_argument("config: relay power budget must be positive");

    std::vector<std::string> notices;
    if (config.scheme == Scheme::SM) {
        notices.push_back("sm: relay, pilot and feedback settings are ignored");
    } else if (config.scheme != Scheme::ALRRMO) {
        notices.push_back(scheme_name(config.scheme) +
                          ": pilot, step-size and feedback settings are ignored");
    } else if (config.perfect_feedback) {
        notices.push_back("alrrmo: feedback_bits and feedback_error_prob are ignored "
                          "(perfect feedback)");
    }
    return notices;
}

std::string config_hash(const SimConfig& config) {
    std::ostringstream canon;
    canon << scheme_name(config.scheme) << '|' << config.antennas << '|' << config.relays << '|'
          << config.direct_link << '|';
    canon.precision(17);
    for (double s : config.snr_db) canon << s << ',';
    canon << '|' << config.min_trials << '|' << config.max_trials << '|' << config.min_bit_errors
          << '|' << config.pilots << '|' << config.payload << '|' << config.beta << '|'
          << config.mu << '|' << config.feedback_bits << '|' << config.feedback_error_prob << '|'
          << config.perfect_feedback << '|' << config.master_seed << '|'
          << config.relay_power_budget;

    // FNV-1a, 64 bit.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << h;
    return hex.str();
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, Scheme scheme, int snr_index,
                                long attempt) {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ static_cast<std::uint64_t>(scheme));
    h = mix64(h ^ static_cast<std::uint64_t>(snr_index));
    h = mix64(h ^ static_cast<std::uint64_t>(attempt));
    return h;
}

namespace {

// Stream tags for the per-trial random substreams.
enum : std::uint64_t {
    kTagChannel = 1,
    kTagCodeDraw = 2,
    kTagTraining = 3,
    kTagFeedback = 4,
    kTagPayloadBits = 5,
    kTagPayloadNoise = 6,
};

BitBlock draw_bits(std::size_t count, RandomStream& rng) {
    BitBlock bits(count);
    for (auto& b : bits) b = rng.bernoulli(0.5) ? 1 : 0;
    return bits;
}

// Identity code scaled to meet the shared power budget.
RandomizedCode identity_code(int antennas, int relays, double budget) {
    RandomizedCode code;
    code.power_budget = budget;
    for (int k = 0; k < relays; ++k) code.matrices.push_back(ComplexMat::identity(antennas));
    return normalize_code(code);
}

// Payload detection with frozen filters over one coherence block.
TrialOutcome run_payload(const SimConfig& config, const ChannelSet& channels,
                         const RandomizedCode& code, const AmplifyGain& gain,
                         const NoiseModel& noise, const FilterBank& filters,
                         RandomStream& bit_rng, RandomStream& noise_rng) {
    TrialOutcome out;
    int n = config.antennas;
    for (int i = 0; i < config.payload; ++i) {
        BitBlock bits = draw_bits(static_cast<std::size_t>(2 * n), bit_rng);
        SymbolVec s = modulate(bits);
        ComplexMat r = assemble_received_vector(channels, code, gain, s, noise, noise_rng,
                                                config.direct_link);
        BitBlock decided = demodulate(detect_symbols(filters, r));
        out.bit_errors += static_cast<long>(count_bit_errors(bits, decided));
        out.bits_sent += static_cast<long>(bits.size());
    }
    return out;
}

// Spatial multiplexing baseline: direct link only, closed-form MMSE on H.
TrialOutcome run_sm_trial(const SimConfig& config, const ChannelSet& channels,
                          const NoiseModel& noise, RandomStream& bit_rng,
                          RandomStream& noise_rng) {
    const ComplexMat& h = channels.source_dest;
    int n = config.antennas;
    ComplexMat autocorr(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            cdouble acc = 0.0;
            for (int m = 0; m < n; ++m) acc += h(a, m) * std::conj(h(b, m));
            autocorr(a, b) = kSymbolPower * acc;
        }
    for (int i = 0; i < n; ++i) autocorr(i, i) += noise.sigma2;

    FilterBank filters;
    for (int j = 0; j < n; ++j)
        filters.w.push_back(hermitian_solve(autocorr, kSymbolPower * h.col(j)));

    TrialOutcome out;
    for (int i = 0; i < config.payload; ++i) {
        BitBlock bits = draw_bits(static_cast<std::size_t>(2 * n), bit_rng);
        SymbolVec s = modulate(bits);
        ComplexMat r = add_awgn(matmul(h, ComplexMat::column(s)), noise, noise_rng);
        BitBlock decided = demodulate(detect_symbols(filters, r));
        out.bit_errors += static_cast<long>(count_bit_errors(bits, decided));
        out.bits_sent += static_cast<long>(bits.size());
    }
    return out;
}

FilterBank wiener_filters(const EquivalentChannel& eq, const NoiseModel& noise) {
    CorrelationPair corr = analytic_correlations(eq, noise);
    FilterBank filters;
    for (int j = 0; j < eq.antennas; ++j) filters.w.push_back(mmse_filter(corr, j));
    return filters;
}

}  // namespace

TrialOutcome run_trial(const SimConfig& config, double snr_db, std::uint64_t trial_seed) {
    NoiseModel noise{kSymbolPower / std::pow(10.0, snr_db / 10.0)};
    RandomStream root(trial_seed);
    RandomStream channel_rng = root.child(kTagChannel);
    RandomStream bit_rng = root.child(kTagPayloadBits);
    RandomStream payload_noise_rng = root.child(kTagPayloadNoise);

    ChannelSet channels = draw_channel_set(config.antennas, config.relays, channel_rng);

    if (config.scheme == Scheme::SM)
        return run_sm_trial(config, channels, noise, bit_rng, payload_noise_rng);

    AmplifyGain gain = default_amplify_gain(config.antennas, noise.sigma2);

    if (config.scheme == Scheme::STC_AF) {
        RandomizedCode code =
            identity_code(config.antennas, config.relays, config.relay_power_budget);
        EquivalentChannel eq = build_equivalent_channel(channels, code, gain, config.direct_link);
        return run_payload(config, channels, code, gain, noise, wiener_filters(eq, noise),
                           bit_rng, payload_noise_rng);
    }

    RandomStream code_rng = root.child(kTagCodeDraw);
    RandomizedCode code = draw_initial_code(config.antennas, config.relays,
                                            config.relay_power_budget, code_rng);

    if (config.scheme == Scheme::RSTC_FIXED) {
        EquivalentChannel eq = build_equivalent_channel(channels, code, gain, config.direct_link);
        return run_payload(config, channels, code, gain, noise, wiener_filters(eq, noise),
                           bit_rng, payload_noise_rng);
    }

    // ALRRMO: pilot training under the ideal code, the feedback round trip,
    // then payload detection with the frozen trained filters and the code
    // the relay actually reconstructed.
    EquivalentChannel eq = build_equivalent_channel(channels, code, gain, config.direct_link);
    AdaptState state{matched_init_filters(eq), code, config.beta, config.mu, 0};
    RandomStream train_rng = root.child(kTagTraining);
    TrainOptions train;
    train.pilots = config.pilots;
    state = alrrmo_train(std::move(state), channels, gain, noise, config.direct_link, train_rng,
                         train);

    RandomizedCode applied = state.code;
    if (!config.perfect_feedback) {
        RandomStream feedback_rng = root.child(kTagFeedback);
        QuantizerSpec spec = default_quantizer_spec(config.feedback_bits,
                                                    config.relay_power_budget, config.relays,
                                                    config.antennas);
        applied = feedback_roundtrip(state.code, spec, config.feedback_error_prob, feedback_rng);
    }
    return run_payload(config, channels, applied, gain, noise, state.filters, bit_rng,
                       payload_noise_rng);
}

SweepResult run_sweep(const SimConfig& config) {
    for (const auto& notice : validate_config(config)) std::cerr << "notice: " << notice << '\n';
    std::string hash = config_hash(config);

    // Points are produced in ascending SNR order regardless of list order.
    std::vector<int> order(config.snr_db.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return config.snr_db[static_cast<std::size_t>(a)] <
                                         config.snr_db[static_cast<std::size_t>(b)]; });

    SweepResult result;
    for (int snr_index : order) {
        double snr = config.snr_db[static_cast<std::size_t>(snr_index)];
        long bits = 0;
        long errors = 0;
        long trials = 0;
        long diverged = 0;
        long attempt = 0;
        double err_sum = 0.0;
        double err_sq_sum = 0.0;
        long bits_per_trial = 0;

        while (trials < config.max_trials &&
               (trials < config.min_trials || errors < config.min_bit_errors)) {
            std::uint64_t seed = derive_trial_seed(config.master_seed, config.scheme, snr_index,
                                                   attempt);
            ++attempt;
            TrialOutcome outcome;
            try {
                outcome = run_trial(config, snr, seed);
            } catch (const DivergenceError&) {
                ++diverged;
                // Redrawn with the next attempt seed; abort if more than 1%
                // of trials diverge.
                if (diverged > std::max<long>(10, attempt / 100))
                    throw DivergenceError("run_sweep: more than 1% of trials diverged");
                continue;
            }
            bits += outcome.bits_sent;
            errors += outcome.bit_errors;
            bits_per_trial = outcome.bits_sent;
            err_sum += static_cast<double>(outcome.bit_errors);
            err_sq_sum += static_cast<double>(outcome.bit_errors) *
                          static_cast<double>(outcome.bit_errors);
            ++trials;
        }

        BerPoint point;
        point.scheme = scheme_name(config.scheme);
        point.snr_db = snr;
        point.bits_sent = bits;
        point.bit_errors = errors;
        point.ber = bits > 0 ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
        point.config_hash = hash;

        PointStats stats;
        stats.trials = trials;
        stats.diverged = diverged;
        if (trials > 1 && bits_per_trial > 0) {
            double mean = err_sum / static_cast<double>(trials);
            double var = err_sq_sum / static_cast<double>(trials) - mean * mean;
            if (var < 0.0) var = 0.0;
            stats.ber_stderr = std::sqrt(var / static_cast<double>(trials)) /
                               static_cast<double>(bits_per_trial);
        }
        result.points.push_back(point);
        result.stats.push_back(stats);
    }
    return result;
}

std::string format_ber(double ber) {
    if (ber == 0.0) return "0";
    int exponent = static_cast<int>(std::floor(std::log10(std::abs(ber))));
    int places = 5 - exponent;
    if (places < 0) places = 0;
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(places);
    out << ber;
    return out.str();
}

void emit_csv(const std::vector<BerPoint>& points, std::ostream& out) {
    out << "scheme,snr_db,bits_sent,bit_errors,ber,config_hash\n";
    for (const auto& p : points) {
        std::ostringstream snr;
        snr << p.snr_db;
        out << p.scheme << ',' << snr.str() << ',' << p.bits_sent << ',' << p.bit_errors << ','
            << format_ber(p.ber) << ',' << p.config_hash << '\n';
    }
}

void emit_csv(const std::vector<BerPoint>& points, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("emit_csv: cannot write " + path);
    emit_csv(points, file);
    if (!file.good()) throw std::runtime_error("emit_csv: write failed for " + path);
}

double snr_at_ber(const std::vector<BerPoint>& points, double target_ber) {
    const double nan = std::nan("");
    if (points.empty() || target_ber <= 0.0) return nan;
    auto floor_ber = [](const BerPoint& p) {
        // Zero-error points enter the interpolation at half an error.
        if (p.ber > 0.0) return p.ber;
        return p.bits_sent > 0 ? 0.5 / static_cast<double>(p.bits_sent) : 1e-12;
    };
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        double lo = floor_ber(points[i]);
        double hi = floor_ber(points[i + 1]);
        if (lo >= target_ber && hi <= target_ber) {
            if (lo == hi) return points[i].snr_db;
            double t = (std::log10(target_ber) - std::log10(lo)) /
                       (std::log10(hi) - std::log10(lo));
            return points[i].snr_db + t * (points[i + 1].snr_db - points[i].snr_db);
        }
    }
    if (!points.empty() && floor_ber(points.front()) <= target_ber) return points.front().snr_db;
    return nan;
}

std::string compare_report(
    const std::vector<std::pair<std::string, std::vector<BerPoint>>>& sweeps) {
    if (sweeps.empty()) return "no sweeps\n";
    const auto& grid = sweeps.front().second;
    for (const auto& [label, points] : sweeps) {
        if (points.size() != grid.size())
            throw std::invalid_argument("compare_report: sweeps use different SNR grids");
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i].snr_db != grid[i].snr_db)
                throw std::invalid_argument("compare_report: sweeps use different SNR grids");
    }

    std::ostringstream out;
    out << "snr_db";
    for (const auto& [label, points] : sweeps) out << '\t' << label;
    out << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << grid[i].snr_db;
        for (const auto& [label, points] : sweeps) out << '\t' << format_ber(points[i].ber);
        out << '\n';
    }

    for (double target : {1e-2, 1e-3}) {
        out << "\ngain at BER " << target << " (row over column, dB):\n";
        out << "      ";
        for (const auto& [label, points] : sweeps) out << '\t' << label;
        out << '\n';
        for (const auto& [label_a, points_a] : sweeps) {
            out << label_a;
            double snr_a = snr_at_ber(points_a, target);
            for (const auto& [label_b, points_b] : sweeps) {
                double snr_b = snr_at_ber(points_b, target);
                out << '\t';
                if (std::isnan(snr_a) || std::isnan(snr_b)) {
                    out << "not reached";
                } else {
                    std::ostringstream gain;
                    gain.setf(std::ios::fixed);
                    gain.precision(2);
                    gain << (snr_b - snr_a);
                    out << gain.str();
                }
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace rdstc

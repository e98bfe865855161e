#ifndef RDSTC_HARNESS_HPP
#define RDSTC_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rdstc/stc_relay.hpp"

namespace rdstc {

enum class Scheme { SM, STC_AF, RSTC_FIXED, ALRRMO };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // accepts sm|stc-af|rstc|alrrmo

struct SimConfig {
    Scheme scheme = Scheme::ALRRMO;
    int antennas = 2;
    int relays = 1;
    bool direct_link = true;
    std::vector<double> snr_db;

    long min_trials = 2000;
    long max_trials = 500000;  // hard cap so high-SNR points terminate
    long min_bit_errors = 200;

    int pilots = 200;
    int payload = 200;  // payload symbol vectors per coherence block
    double beta = 0.05;
    double mu = 0.01;

    int feedback_bits = 4;
    double feedback_error_prob = 0.0;
    bool perfect_feedback = false;

    std::uint64_t master_seed = 1;
    double relay_power_budget = 4.0;  // N * T by default
};

// Throws std::invalid_argument on fatal problems; returns notices about
// fields that are ignored under the configured scheme.
std::vector<std::string> validate_config(const SimConfig& config);

// Stable digest of every field that affects results.
std::string config_hash(const SimConfig& config);

// Per-trial seed: mixes master seed, scheme, SNR index and attempt index so
// trials are reproducible independently of execution order.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, Scheme scheme, int snr_index,
                                long attempt);

struct TrialOutcome {
    long bits_sent = 0;
    long bit_errors = 0;
};

// One coherence block end to end; throws DivergenceError if the adaptive
// loop diverges (the sweep redraws such trials).
TrialOutcome run_trial(const SimConfig& config, double snr_db, std::uint64_t trial_seed);

struct BerPoint {
    std::string scheme;
    double snr_db = 0.0;
    long bits_sent = 0;
    long bit_errors = 0;
    double ber = 0.0;
    std::string config_hash;
};

struct PointStats {
    long trials = 0;
    long diverged = 0;
    double ber_stderr = 0.0;  // from the per-trial error-count variance
};

struct SweepResult {
    std::vector<BerPoint> points;
    std::vector<PointStats> stats;
};

SweepResult run_sweep(const SimConfig& config);

// 6 significant digits, plain decimal notation.
std::string format_ber(double ber);

void emit_csv(const std::vector<BerPoint>& points, std::ostream& out);
void emit_csv(const std::vector<BerPoint>& points, const std::string& path);

// Side-by-side BER table plus pairwise dB gains at BER 1e-2 and 1e-3 read
// off the curves by log-linear interpolation. All sweeps must share the SNR
// grid.
std::string compare_report(const std::vector<std::pair<std::string, std::vector<BerPoint>>>& sweeps);

// SNR at which a curve crosses `target_ber`, or NaN when it never does.
double snr_at_ber(const std::vector<BerPoint>& points, double target_ber);

}  // namespace rdstc

#endif  // RDSTC_HARNESS_HPP

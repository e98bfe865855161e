// Command-line driver: runs Monte Carlo BER sweeps for the four schemes and
// writes CSV plus an optional comparison report.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdstc/harness.hpp"

namespace {

std::vector<double> parse_snr(const std::string& text) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = 0.0, step = 0.0, stop = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw CLI::ValidationError("--snr", "expected start:step:stop with positive step");
        for (double v = start; v <= stop + 1e-9; v += step) values.push_back(v);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (!item.empty()) values.push_back(std::stod(item));
        }
    }
    if (values.empty()) throw CLI::ValidationError("--snr", "no SNR values given");
    return values;
}

std::vector<std::string> split_schemes(const std::string& text) {
    std::vector<std::string> names;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) names.push_back(item);
    }
    return names;
}

// Applies JSON keys for every option the user did not pass as a flag.
void apply_json_config(const CLI::App& app, const std::string& path, rdstc::SimConfig& config,
                       std::string& scheme_text, std::string& snr_text, std::string& direct_text) {
    std::ifstream file(path);
    if (!file) throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j;
    file >> j;

    auto absent = [&](const char* flag) { return app.count(flag) == 0; };

    if (j.contains("scheme") && absent("--scheme")) scheme_text = j["scheme"].get<std::string>();
    if (j.contains("snr_db") && absent("--snr")) {
        config.snr_db.clear();
        for (const auto& v : j["snr_db"]) config.snr_db.push_back(v.get<double>());
        snr_text.clear();
    }
    if (j.contains("antennas") && absent("--antennas")) config.antennas = j["antennas"].get<int>();
    if (j.contains("relays") && absent("--relays")) config.relays = j["relays"].get<int>();
    if (j.contains("direct_link") && absent("--direct-link")) {
        config.direct_link = j["direct_link"].get<bool>();
        direct_text.clear();
    }
    if (j.contains("min_trials") && absent("--min-trials"))
        config.min_trials = j["min_trials"].get<long>();
    if (j.contains("max_trials") && absent("--max-trials"))
        config.max_trials = j["max_trials"].get<long>();
    if (j.contains("min_bit_errors") && absent("--min-bit-errors"))
        config.min_bit_errors = j["min_bit_errors"].get<long>();
    if (j.contains("pilots") && absent("--pilots")) config.pilots = j["pilots"].get<int>();
    if (j.contains("payload") && absent("--payload")) config.payload = j["payload"].get<int>();
    if (j.contains("beta") && absent("--beta")) config.beta = j["beta"].get<double>();
    if (j.contains("mu") && absent("--mu")) config.mu = j["mu"].get<double>();
    if (j.contains("feedback_bits") && absent("--feedback-bits"))
        config.feedback_bits = j["feedback_bits"].get<int>();
    if (j.contains("feedback_error_prob") && absent("--feedback-error-prob"))
        config.feedback_error_prob = j["feedback_error_prob"].get<double>();
    if (j.contains("perfect_feedback") && absent("--perfect-feedback"))
        config.perfect_feedback = j["perfect_feedback"].get<bool>();
    if (j.contains("master_seed") && absent("--seed"))
        config.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("relay_power_budget") && absent("--relay-power"))
        config.relay_power_budget = j["relay_power_budget"].get<double>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo BER simulator for two-hop relay networks with "
                 "randomized space-time coding"};

    rdstc::SimConfig config;
    std::string scheme_text = "alrrmo";
    std::string snr_text = "0:2:16";
    std::string direct_text;
    std::string config_path;
    std::string output_path = "ber.csv";
    std::string report_path;

    app.add_option("--config", config_path, "JSON config file mirroring the simulator options");
    app.add_option("--scheme", scheme_text,
                   "scheme to run: sm|stc-af|rstc|alrrmo, or a comma-separated list");
    app.add_option("--snr", snr_text, "SNR grid in dB: start:step:stop or comma list");
    app.add_option("--antennas", config.antennas, "antennas per node");
    app.add_option("--relays", config.relays, "number of relay nodes");
    app.add_option("--direct-link", direct_text, "on|off: include the source-destination link");
    app.add_option("--pilots", config.pilots, "pilot vectors per coherence block");
    app.add_option("--payload", config.payload, "payload symbol vectors per coherence block");
    app.add_option("--beta", config.beta, "filter step size");
    app.add_option("--mu", config.mu, "code step size");
    app.add_option("--feedback-bits", config.feedback_bits, "quantizer bits per component");
    app.add_option("--feedback-error-prob", config.feedback_error_prob,
                   "feedback channel flip probability");
    app.add_flag("--perfect-feedback", config.perfect_feedback,
                 "apply the trained code without quantization or feedback errors");
    app.add_option("--min-bit-errors", config.min_bit_errors, "bit errors required per point");
    app.add_option("--min-trials", config.min_trials, "minimum trials per point");
    app.add_option("--max-trials", config.max_trials, "hard trial cap per point");
    app.add_option("--seed", config.master_seed, "master seed for the whole sweep");
    app.add_option("--relay-power", config.relay_power_budget, "relay power budget P_R");
    app.add_option("--output", output_path, "CSV output path");
    app.add_option("--report", report_path, "comparison report output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty())
            apply_json_config(app, config_path, config, scheme_text, snr_text, direct_text);
        if (!direct_text.empty()) {
            if (direct_text != "on" && direct_text != "off")
                throw CLI::ValidationError("--direct-link", "expected on or off");
            config.direct_link = direct_text == "on";
        }
        if (!snr_text.empty()) config.snr_db = parse_snr(snr_text);

        std::vector<std::pair<std::string, std::vector<rdstc::BerPoint>>> labelled;
        std::vector<rdstc::BerPoint> all_points;
        for (const std::string& name : split_schemes(scheme_text)) {
            rdstc::SimConfig run = config;
            run.scheme = rdstc::scheme_from_name(name);
            std::cerr << "running " << name << " over " << run.snr_db.size() << " SNR points\n";
            rdstc::SweepResult sweep = rdstc::run_sweep(run);
            all_points.insert(all_points.end(), sweep.points.begin(), sweep.points.end());
            labelled.emplace_back(name, sweep.points);
        }

        rdstc::emit_csv(all_points, output_path);
        std::cerr << "wrote " << output_path << '\n';
        if (!report_path.empty()) {
            std::ofstream report(report_path, std::ios::binary);
            if (!report) throw std::runtime_error("cannot write " + report_path);
            report << rdstc::compare_report(labelled);
            std::cerr << "wrote " << report_path << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

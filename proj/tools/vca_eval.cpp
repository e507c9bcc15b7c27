// Simulation and scoring CLI.
//
//   vca_eval run --scenarios FILE --configs all|None,CC,... --seed N --out DIR
//   vca_eval annotate --in DIR
//   vca_eval report --in DIR [--format text|csv] [--ground-truth FILE]
//   vca_eval zscore --in likert.csv

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"
#include "cluedesk/eval/annotate.hpp"
#include "cluedesk/eval/matrix.hpp"
#include "cluedesk/eval/relabel.hpp"
#include "cluedesk/eval/report.hpp"
#include "cluedesk/eval/stats.hpp"
#include "cluedesk/model/codec.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>

using namespace cluedesk;
namespace fs = std::filesystem;

namespace {

std::vector<Configuration> parse_configs(const std::string& spec) {
    if (spec == "all") {
        return {kAllConfigurations.begin(), kAllConfigurations.end()};
    }
    std::vector<Configuration> out;
    for (const auto& label : text::split(spec, ',')) {
        auto c = Configuration::from_label(text::trim(label));
        if (!c) {
            throw ConfigError("unknown configuration '" + label + "'");
        }
        out.push_back(*c);
    }
    return out;
}

std::vector<ConversationState> load_logs(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".jsonl" && e.path().filename() != "index.jsonl") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<ConversationState> logs;
    for (const auto& f : files) {
        logs.push_back(codec::decode(read_text_file(f)));
    }
    return logs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scripted evaluation harness"};
    app.require_subcommand(1);
    std::string data_dir = CLUEDESK_DATA_DIR;
    app.add_option("--data-dir", data_dir, "Directory with catalog, taxonomy and fixtures");

    auto* run = app.add_subcommand("run", "Simulate scenarios x configurations x seeds");
    std::string scenarios_file;
    std::string configs = "all";
    std::vector<std::uint64_t> seeds{1};
    std::string out_dir;
    std::string injection = "none";
    bool profile_unavailable = false;
    bool cc_down = false;
    run->add_option("--scenarios", scenarios_file, "Scenario file (default data-dir/scenarios.json)");
    run->add_option("--configs", configs, "all or comma-separated labels");
    run->add_option("--seed", seeds, "Seed(s)")->expected(1, -1);
    run->add_option("--out", out_dir, "Output directory for session logs")->required();
    run->add_option("--injection", injection, "none|profile_all1|profile_all5|incorrect_spc");
    run->add_flag("--profile-unavailable", profile_unavailable, "Simulate profile store outages");
    run->add_flag("--cc-down", cc_down, "Simulate an unreachable clue collector");

    auto* ann = app.add_subcommand("annotate", "Score logs against scenario oracles");
    std::string in_dir;
    ann->add_option("--in", in_dir, "Directory of session logs")->required();
    ann->add_option("--scenarios", scenarios_file, "Scenario file");

    auto* rep = app.add_subcommand("report", "Aggregate metrics over logs");
    std::string format = "text";
    std::string gt_file;
    rep->add_option("--in", in_dir, "Directory of session logs")->required();
    rep->add_option("--format", format, "text|csv")->check(CLI::IsMember({"text", "csv"}));
    rep->add_option("--ground-truth", gt_file, "Questionnaire profile for MAE trajectories");
    rep->add_option("--scenarios", scenarios_file, "Scenario file");

    auto* z = app.add_subcommand("zscore", "Within-participant z-scores of Likert responses");
    std::string likert;
    z->add_option("--in", likert, "CSV with participant,value rows")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (z->parsed()) {
            const auto normalized = eval::zscore_normalize(eval::parse_likert_csv(read_text_file(likert)));
            std::cout << "participant,index,z\n";
            for (const auto& [p, values] : normalized) {
                for (std::size_t i = 0; i < values.size(); ++i) {
                    std::cout << p << "," << i + 1 << "," << values[i] << "\n";
                }
            }
            return 0;
        }

        const auto env = eval::Environment::load(data_dir, scenarios_file);
        if (run->parsed()) {
            auto inj = injection_from_string(injection);
            if (!inj) {
                throw ConfigError("unknown injection '" + injection + "'");
            }
            eval::MatrixOptions options;
            options.injection = *inj;
            options.profile_unavailable = profile_unavailable;
            options.cc_unreachable = cc_down;
            const auto cfgs = parse_configs(configs);
            const auto start = std::chrono::steady_clock::now();
            const auto result = eval::run_matrix(env, env.scenarios, cfgs, seeds, options);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            fs::create_directories(out_dir);
            for (const auto& r : result.runs) {
                write_text_file(fs::path(out_dir) / (r.state.session_id + ".jsonl"), r.log);
                for (const auto& w : r.warnings) {
                    std::cerr << r.state.session_id << ": " << w << "\n";
                }
            }
            std::cout << result.runs.size() << " sessions, " << result.requests_sent
                      << " model requests, " << result.guard_refusals << " refused, "
                      << result.outbound_hits << " outbound PII hits, " << secs << " s\n";
            return 0;
        }

        const auto logs = load_logs(in_dir);
        if (ann->parsed()) {
            std::cout << "session_id,scenario,declared,effective,effectiveness,efficiency,"
                         "overwhelmingness\n";
            for (const auto& log : logs) {
                const auto& spec = eval::find_scenario(env.scenarios, log.config.scenario);
                const auto o = eval::annotate(log, spec);
                std::cout << log.session_id << "," << spec.id << "," << log.configuration().label()
                          << "," << eval::relabel(log).label() << "," << (o.effectiveness ? 1 : 0)
                          << "," << o.efficiency << "," << o.overwhelmingness << "\n";
            }
            return 0;
        }
        std::optional<profiler::GroundTruthProfile> gt;
        if (!gt_file.empty()) {
            gt = profiler::load_ground_truth(gt_file, env.taxonomy);
        }
        const auto report = eval::build_report(logs, env.scenarios, gt);
        std::cout << (format == "csv" ? eval::render_csv(report) : eval::render_text(report));
    } catch (const std::exception& e) {
        std::cerr << "vca_eval: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

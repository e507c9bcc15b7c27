#include "cluedesk/eval/report.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/eval/relabel.hpp"
#include "cluedesk/recommender/ranking.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace cluedesk::eval {

namespace {

std::string num(double v, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string opt(const std::optional<double>& v, int digits = 3) {
    return v ? num(*v, digits) : "n/a";
}

std::size_t label_column(const std::string& label) {
    for (std::size_t i = 0; i < kConfigLabels.size(); ++i) {
        if (label == kConfigLabels[i]) {
            return i;
        }
    }
    throw ContractError("unknown configuration label '" + label + "'");
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

} // namespace

Report build_report(std::span<const ConversationState> logs,
                    const std::vector<ScenarioSpec>& scenarios,
                    const std::optional<profiler::GroundTruthProfile>& gt) {
    Report r;
    std::map<std::string, std::vector<const SessionRow*>> by_config;
    std::map<std::string, std::vector<recommender::MrrCase>> mrr_cases;
    std::map<std::string, std::vector<std::vector<double>>> trajectories;
    std::map<std::string, std::vector<const SessionRow*>> by_scenario;
    std::size_t cc_hits = 0;
    std::size_t no_cc_hits = 0;

    r.sessions.reserve(logs.size());
    for (const auto& log : logs) {
        const ScenarioSpec& spec = find_scenario(scenarios, log.config.scenario);
        const Configuration effective = relabel(log);
        SessionRow row;
        row.session_id = log.session_id;
        row.scenario = spec.id;
        row.declared = log.configuration().label();
        row.effective = effective.label();
        row.outcome = annotate(log, spec);
        const auto ledger = llm::session_ledger(log);
        for (const auto& e : ledger) {
            row.tokens += e.total_tokens();
            row.api_seconds += e.api_seconds;
        }
        row.cost = llm::conversation_cost(ledger);
        r.sessions.push_back(row);

        r.relabel_counts[row.declared][label_column(row.effective)] += 1;
        if (const Recommendation* rec = log.recommendation()) {
            recommender::MrrCase c;
            c.ranked.push_back(rec->chosen);
            for (const auto& s : rec->ranked) {
                if (s.spc_id != rec->chosen) {
                    c.ranked.push_back(s.spc_id);
                }
            }
            c.correct = {spec.relevant_spcs.begin(), spec.relevant_spcs.end()};
            mrr_cases[row.effective].push_back(std::move(c));
        }
        if (gt && effective.adaptation_enabled && !log.turns.empty()) {
            trajectories[row.effective].push_back(profiler::mae_trajectory(log, *gt));
        }
        if (!effective.baseline) {
            if (effective.cc_enabled) {
                ++r.sessions_with_cc;
                cc_hits += row.outcome.effectiveness ? 1 : 0;
            } else {
                ++r.sessions_without_cc;
                no_cc_hits += row.outcome.effectiveness ? 1 : 0;
            }
        }
    }
    for (const auto& row : r.sessions) {
        by_config[row.effective].push_back(&row);
        by_scenario[row.scenario].push_back(&row);
    }
    if (r.sessions_with_cc > 0) {
        r.effectiveness_with_cc = static_cast<double>(cc_hits) / r.sessions_with_cc;
    }
    if (r.sessions_without_cc > 0) {
        r.effectiveness_without_cc = static_cast<double>(no_cc_hits) / r.sessions_without_cc;
    }

    for (const char* label : kConfigLabels) {
        auto it = by_config.find(label);
        if (it == by_config.end()) {
            continue;
        }
        ConfigRow c;
        c.label = label;
        c.sessions = it->second.size();
        double effective = 0;
        double overwhelm = 0;
        std::vector<double> efficiencies;
        for (const SessionRow* s : it->second) {
            effective += s->outcome.effectiveness ? 1 : 0;
            overwhelm += static_cast<double>(s->outcome.overwhelmingness);
            if (s->outcome.effectiveness) {
                efficiencies.push_back(s->outcome.efficiency);
            }
        }
        c.effectiveness_rate = effective / c.sessions;
        c.overwhelmingness_mean = overwhelm / c.sessions;
        if (!efficiencies.empty()) {
            c.efficiency_mean = llm::mean_sd(efficiencies).mean;
        }
        if (auto m = mrr_cases.find(label); m != mrr_cases.end()) {
            c.mrr_at_1 = recommender::mrr_at_k(m->second, 1);
        }
        r.configs.push_back(c);
    }

    for (auto& [label, series] : trajectories) {
        std::size_t longest = 0;
        for (const auto& s : series) {
            longest = std::max(longest, s.size());
        }
        std::vector<double> mean(longest, 0.0);
        for (std::size_t t = 0; t < longest; ++t) {
            double sum = 0;
            std::size_t n = 0;
            // A finished session keeps its last profile, so it carries forward.
            for (const auto& s : series) {
                if (!s.empty()) {
                    sum += s[std::min(t, s.size() - 1)];
                    ++n;
                }
            }
            mean[t] = sum / static_cast<double>(n);
        }
        r.mae_trajectories[label] = std::move(mean);
    }

    r.nodes = llm::node_overhead_report(logs);
    for (const auto& spec : scenarios) {
        auto it = by_scenario.find(spec.id);
        if (it == by_scenario.end()) {
            continue;
        }
        std::vector<double> tokens, seconds, cost;
        for (const SessionRow* s : it->second) {
            tokens.push_back(static_cast<double>(s->tokens));
            seconds.push_back(s->api_seconds);
            cost.push_back(s->cost);
        }
        r.scenarios.push_back(ScenarioOverhead{spec.id, it->second.size(), llm::mean_sd(tokens),
                                               llm::mean_sd(seconds), llm::mean_sd(cost)});
    }
    return r;
}

std::string render_text(const Report& r) {
    std::string out;
    out += "Sessions\n";
    out += pad("session", 34) + pad("declared", 10) + pad("effective", 10) +
           "eff  effic  overw  tokens   seconds  cost\n";
    for (const auto& s : r.sessions) {
        out += pad(s.session_id, 34) + pad(s.declared, 10) + pad(s.effective, 10) +
               pad(s.outcome.effectiveness ? "1" : "0", 5) +
               pad(std::to_string(s.outcome.efficiency), 7) +
               pad(std::to_string(s.outcome.overwhelmingness), 7) +
               pad(std::to_string(s.tokens), 9) + pad(num(s.api_seconds, 2), 9) +
               num(s.cost, 4) + "\n";
    }

    out += "\nBy effective configuration\n";
    out += pad("config", 10) + "n    effectiveness  efficiency  overwhelm  MRR@1\n";
    for (const auto& c : r.configs) {
        out += pad(c.label, 10) + pad(std::to_string(c.sessions), 5) +
               pad(num(c.effectiveness_rate), 15) + pad(opt(c.efficiency_mean, 2), 12) +
               pad(num(c.overwhelmingness_mean, 2), 11) + opt(c.mrr_at_1) + "\n";
    }
    out += "\nEffectiveness with CC: " + num(r.effectiveness_with_cc) + " (" +
           std::to_string(r.sessions_with_cc) + " sessions), without CC: " +
           num(r.effectiveness_without_cc) + " (" + std::to_string(r.sessions_without_cc) +
           " sessions)\n";

    if (!r.mae_trajectories.empty()) {
        out += "\nProfile MAE after each turn\n";
        for (const auto& [label, series] : r.mae_trajectories) {
            out += pad(label, 10);
            for (double v : series) {
                out += num(v) + " ";
            }
            out += "\n";
        }
    }

    out += "\nPer-node overhead (mean +- sd per call)\n";
    out += pad("node", 32) + pad("calls", 7) + pad("tokens", 20) + "seconds\n";
    for (const auto& n : r.nodes) {
        out += pad(std::string(to_string(n.node)), 32) + pad(std::to_string(n.samples), 7) +
               pad(num(n.tokens.mean, 1) + " +- " + num(n.tokens.sd, 1), 20) +
               num(n.api_seconds.mean, 2) + " +- " + num(n.api_seconds.sd, 2) + "\n";
    }

    out += "\nPer-scenario overhead (mean +- sd per session)\n";
    out += pad("scenario", 18) + pad("n", 4) + pad("tokens", 22) + pad("seconds", 18) + "cost\n";
    for (const auto& s : r.scenarios) {
        out += pad(s.scenario, 18) + pad(std::to_string(s.sessions), 4) +
               pad(num(s.tokens.mean, 0) + " +- " + num(s.tokens.sd, 0), 22) +
               pad(num(s.api_seconds.mean, 1) + " +- " + num(s.api_seconds.sd, 1), 18) +
               num(s.cost.mean, 4) + " +- " + num(s.cost.sd, 4) + "\n";
    }

    out += "\nDeclared vs effective configuration counts\n";
    out += pad("declared", 10);
    for (const char* label : kConfigLabels) {
        out += pad(label, 10);
    }
    out += "\n";
    for (const auto& [declared, counts] : r.relabel_counts) {
        out += pad(declared, 10);
        for (std::size_t c : counts) {
            out += pad(std::to_string(c), 10);
        }
        out += "\n";
    }
    return out;
}

std::string render_csv(const Report& r) {
    std::string out =
        "table,session_id,scenario,declared,effective,effectiveness,efficiency,overwhelmingness,"
        "tokens,api_seconds,cost\n";
    for (const auto& s : r.sessions) {
        out += "session," + s.session_id + "," + s.scenario + "," + s.declared + "," +
               s.effective + "," + (s.outcome.effectiveness ? "1" : "0") + "," +
               std::to_string(s.outcome.efficiency) + "," +
               std::to_string(s.outcome.overwhelmingness) + "," + std::to_string(s.tokens) + "," +
               num(s.api_seconds, 4) + "," + num(s.cost, 6) + "\n";
    }
    out += "\ntable,config,sessions,effectiveness_rate,efficiency_mean,overwhelmingness_mean,mrr_at_1\n";
    for (const auto& c : r.configs) {
        out += "config," + c.label + "," + std::to_string(c.sessions) + "," +
               num(c.effectiveness_rate, 4) + "," + (c.efficiency_mean ? num(*c.efficiency_mean, 4) : "") +
               "," + num(c.overwhelmingness_mean, 4) + "," + (c.mrr_at_1 ? num(*c.mrr_at_1, 4) : "") +
               "\n";
    }
    out += "\ntable,node,calls,tokens_mean,tokens_sd,seconds_mean,seconds_sd\n";
    for (const auto& n : r.nodes) {
        out += "node," + std::string(to_string(n.node)) + "," + std::to_string(n.samples) + "," +
               num(n.tokens.mean, 2) + "," + num(n.tokens.sd, 2) + "," +
               num(n.api_seconds.mean, 4) + "," + num(n.api_seconds.sd, 4) + "\n";
    }
    out += "\ntable,scenario,sessions,tokens_mean,tokens_sd,seconds_mean,seconds_sd,cost_mean,cost_sd\n";
    for (const auto& s : r.scenarios) {
        out += "scenario," + s.scenario + "," + std::to_string(s.sessions) + "," +
               num(s.tokens.mean, 2) + "," + num(s.tokens.sd, 2) + "," +
               num(s.api_seconds.mean, 4) + "," + num(s.api_seconds.sd, 4) + "," +
               num(s.cost.mean, 6) + "," + num(s.cost.sd, 6) + "\n";
    }
    out += "\ntable,declared";
    for (const char* label : kConfigLabels) {
        out += std::string(",") + label;
    }
    out += "\n";
    for (const auto& [declared, counts] : r.relabel_counts) {
        out += "relabel," + declared;
        for (std::size_t c : counts) {
            out += "," + std::to_string(c);
        }
        out += "\n";
    }
    std::string mae = "\ntable,config,turn,mae\n";
    for (const auto& [label, series] : r.mae_trajectories) {
        for (std::size_t t = 0; t < series.size(); ++t) {
            mae += "mae," + label + "," + std::to_string(t + 1) + "," + num(series[t], 4) + "\n";
        }
    }
    if (!r.mae_trajectories.empty()) {
        out += mae;
    }
    return out;
}

} // namespace cluedesk::eval

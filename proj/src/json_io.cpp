#include "stiffness_lab/json_io.hpp"

#include <cstdio>

namespace stifflab {

json profile_to_json(const CoefficientProfile& p) {
    using Kind = CoefficientProfile::Kind;
    switch (p.kind()) {
        case Kind::Constant:
            return {{"family", "constant"}, {"c", p.amplitude()}};
        case Kind::PowerLaw:
            return {{"family", "powerlaw"},
                    {"a", p.amplitude()},
                    {"p", p.exponent()},
                    {"t0", p.domain_start()}};
        case Kind::Exponential:
            return {{"family", "exponential"}, {"a", p.amplitude()}, {"r", p.exponent()}};
        case Kind::Sum: {
            json terms = json::array();
            for (const auto& term : p.terms()) {
                terms.push_back(profile_to_json(term));
            }
            return {{"family", "sum"}, {"terms", std::move(terms)}};
        }
        case Kind::Pullback:
            return {{"family", "pullback"},
                    {"base", profile_to_json(p.pullback_base())},
                    {"gauge", profile_to_json(p.pullback_gauge())},
                    {"n", p.pullback_n()},
                    {"tau0", p.pullback_tau0()},
                    {"amplitude", p.amplitude()}};
    }
    throw Error("unreachable");
}

CoefficientProfile profile_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family")) {
        throw DomainError("profile JSON must be an object with a 'family' key");
    }
    const std::string family = j.at("family").get<std::string>();
    try {
        if (family == "constant") {
            return CoefficientProfile::constant(j.at("c").get<double>());
        }
        if (family == "powerlaw") {
            std::optional<double> t0;
            if (j.contains("t0")) {
                t0 = j.at("t0").get<double>();
            }
            return CoefficientProfile::power_law(j.at("a").get<double>(),
                                                 j.at("p").get<double>(), t0);
        }
        if (family == "exponential") {
            return CoefficientProfile::exponential(j.at("a").get<double>(),
                                                   j.at("r").get<double>());
        }
        if (family == "sum") {
            std::vector<CoefficientProfile> terms;
            for (const auto& term : j.at("terms")) {
                terms.push_back(profile_from_json(term));
            }
            return CoefficientProfile::sum(std::move(terms));
        }
        if (family == "pullback") {
            return CoefficientProfile::pullback(
                profile_from_json(j.at("base")), profile_from_json(j.at("gauge")),
                j.at("n").get<double>(), j.at("tau0").get<double>(),
                j.value("amplitude", 1.0));
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed profile JSON: ") + e.what());
    }
    throw DomainError("unknown profile family '" + family + "'");
}

json report_to_json(const CriterionReport& r) {
    json conds = json::array();
    for (const auto& c : r.conditions) {
        json jc{{"label", c.label}, {"status", to_string(c.status)}};
        if (c.first_violation_time.has_value()) {
            jc["first_violation_time"] = *c.first_violation_time;
        }
        if (!c.note.empty()) {
            jc["note"] = c.note;
        }
        conds.push_back(std::move(jc));
    }
    return {{"window", {{"start", r.window.start}, {"end", r.window.end}}},
            {"conditions", std::move(conds)},
            {"overall", to_string(r.overall)}};
}

json config_to_json(const IntegrationConfig& cfg) {
    return {{"rel_tol", cfg.rel_tol},
            {"abs_tol", cfg.abs_tol},
            {"horizon", cfg.horizon},
            {"escape_radius", cfg.escape_radius},
            {"max_steps", cfg.max_steps},
            {"max_step", cfg.max_step},
            {"samples", cfg.samples},
            {"bound_factor", cfg.bound_factor}};
}

json trajectory_summary_json(const Trajectory& traj, const IntegrationConfig& cfg) {
    json j{{"classification", to_string(traj.classification)},
           {"steps_accepted", traj.stats.steps_accepted},
           {"steps_rejected", traj.stats.steps_rejected},
           {"max_norm", traj.stats.max_norm},
           {"max_norm_final_half", traj.stats.max_norm_final_half},
           {"config", config_to_json(cfg)}};
    if (traj.escape_time.has_value()) {
        j["escape_time"] = *traj.escape_time;
    }
    if (!traj.states.empty()) {
        const auto& s0 = traj.states.front();
        const auto& s1 = traj.states.back();
        j["initial"] = {{"t", s0.t}, {"x1", s0.x1}, {"x2", s0.x2}};
        j["final"] = {{"t", s1.t}, {"x1", s1.x1}, {"x2", s1.x2}};
    }
    return j;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "t,x1,x2\n";
    for (const auto& s : traj.states) {
        out += format_number(s.t);
        out += ',';
        out += format_number(s.x1);
        out += ',';
        out += format_number(s.x2);
        out += '\n';
    }
    return out;
}

std::string trace_to_csv(const CertificateTrace& trace) {
    std::string out = "t,v,dvdt_analytic,dvdt_numeric\n";
    for (const auto& s : trace.samples) {
        out += format_number(s.t);
        out += ',';
        out += format_number(s.v);
        out += ',';
        out += format_number(s.dvdt_analytic);
        out += ',';
        out += format_number(s.dvdt_numeric);
        out += '\n';
    }
    return out;
}

} // namespace stifflab

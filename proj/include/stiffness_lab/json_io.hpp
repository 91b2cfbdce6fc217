#pragma once

#include <string>

#include <json.hpp>

#include "stiffness_lab/certificates.hpp"
#include "stiffness_lab/criteria.hpp"
#include "stiffness_lab/integrate.hpp"
#include "stiffness_lab/profile.hpp"

namespace stifflab {

using json = nlohmann::json;

// Profile schema:
//   {"family":"constant","c":3.0}
//   {"family":"powerlaw","a":1.0,"p":-2.0,"t0":1.0}
//   {"family":"exponential","a":1.0,"r":-1.0}
//   {"family":"sum","terms":[...]}
//   {"family":"pullback","base":{...},"gauge":{...},"n":2.0,"tau0":1.0,"amplitude":1.0}
json profile_to_json(const CoefficientProfile& p);
CoefficientProfile profile_from_json(const json& j);

json report_to_json(const CriterionReport& r);
json config_to_json(const IntegrationConfig& cfg);
json trajectory_summary_json(const Trajectory& traj, const IntegrationConfig& cfg);

/// "%.17g"-formatted number (deterministic across runs).
std::string format_number(double v);

std::string trajectory_to_csv(const Trajectory& traj);
std::string trace_to_csv(const CertificateTrace& trace);

} // namespace stifflab

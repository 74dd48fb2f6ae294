#pragma once

#include "twistor/family.hpp"
#include "twistor/pipeline.hpp"
#include "twistor/report.hpp"

namespace twistor::suites {

report::Suite run_family_suite(const family::FamilyModel& fm);
report::Suite run_fiber_suite(const family::FamilyModel& fm);
report::Suite run_odp_suite(const family::FamilyModel& fm);
report::Suite run_surgery_suite(const family::FamilyModel& fm,
                                const surgery::ResolutionChoice& choice);

/// Runs the selected suites ("family", "fiber", "odp", "surgery"; empty
/// filter = all) and assembles the report.
report::Report run_verification(const family::FamilyModel& fm,
                                const surgery::ResolutionChoice& choice,
                                const std::vector<std::string>& only = {});

}  // namespace twistor::suites

#pragma once

#include <string>

#include "fraclap/averages.hpp"
#include "fraclap/counterexample.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/picard.hpp"
#include "fraclap/representation.hpp"
#include "fraclap/sign_lemma.hpp"

namespace fraclap {

// JSON documents carry "schema": 1. Floats are written in shortest round-trip
// form; non-finite values become null.

// {"schema":1,"fitted":..,"theoretical":..,"window":[lo,hi],"residual":..,"points":..}
std::string decay_report_json(const DecayReport& report);

std::string local_decay_json(const LocalDecayReport& report);

// {"schema":1,"sup_norms":[..],"sup_norms_v":[..],"residuals":[..],"outcome":"..",
//  "steps":..,"exploratory":true,"warning":".."}
std::string trajectory_json(const PicardTrajectory& trajectory);

std::string verdict_json(const RegionVerdict& verdict);

std::string exponent_sequence_json(const ExponentSequence& sequence);

std::string sign_lemma_json(const SignLemmaResult& result);

std::string counterexample_json(const CounterexampleReport& report);

std::string representation_json(const RepresentationTerms& terms);

std::string kelvin_defect_json(const KelvinDefect& defect);

// Banner, then `p,q,verdict,reason`; reasons are double-quoted.
std::string region_map_csv(const RegionMap& map);

}  // namespace fraclap

#pragma once

#include <string>

#include "procscope/ocel.hpp"
#include "procscope/timestamp.hpp"

namespace procscope::testing {

/// t0 < t1 < ... ; one hour apart starting 2024-01-15T08:00:00Z.
Timestamp sample_time(int k);

/// Objects o1:order, i1:item (weight 5 at t0), i2:item (weight 12 at t0);
/// events e1:place@t1 {o1}, e2:pick@t2 {o1,i1}, e3:pick@t3 {o1,i2},
/// e4:ship@t4 {i1,i2}, e5:pick@t5 {i1}; every qualifier is "rel".
Log sample_a();

/// SAMPLE-A with P1 = INCLUDE {(order)} and P2 = INCLUDE {(ship)} applied.
Log sample_a_enriched();

/// The scope file for sample_a_enriched().
inline const std::string kSampleScopes =
    "SCOPE \"P1\" : INCLUDE {(order)};\n"
    "SCOPE \"P2\" : INCLUDE {(ship)};\n";

}  // namespace procscope::testing

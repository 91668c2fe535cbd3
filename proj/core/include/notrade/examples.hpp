#pragma once

#include "notrade/model_io.hpp"

namespace notrade {

// Two-agent, four-state model where both agents hold one constant
// expectation of X across their cells (-1/3 and 1/3) even though the payoff
// is not commonly known: the canonical disagreement instance. Ships with X,
// its negation, a round-robin schedule, and the zero-sum split bundle.
ModelDocument example_one();

// Five-state extension where agent 1 can isolate the top payoff (state w5
// pays 5): maxmin verifiable, threshold verifiable, and no priors support a
// common-knowledge trade. Restricting to {w1..w4} reproduces example one.
ModelDocument example_two();

}  // namespace notrade

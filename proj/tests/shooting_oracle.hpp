#pragma once

// Test-side oracle for the Hastings-McLeod value V(0): shooting with RK4 and
// bisection on the initial slope. Independent of the collocation solver.
namespace tcbec_test {

double shooting_hastings_mcleod_v0();

}  // namespace tcbec_test

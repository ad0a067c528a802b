#pragma once

#include "dareal/kernels.hpp"

namespace dareal {

/// Built-in worked example: a coisometric 7 x 10 colligation over the
/// two-variable ball with scalar output, three-dimensional state and a
/// seven-dimensional input space, together with the one-parameter family of
/// output pairs (C, A_gamma) sharing its kernel.  Used by the `example33`
/// regression suite and as a fixture everywhere a nontrivial multiplier with
/// a degenerate input direction is needed.

/// The coisometric colligation U0 (gamma = 0 state operators).
Colligation example33_colligation();

/// The pair (C, A_gamma); contractive exactly for |gamma| < 1/(2 sqrt 2).
OutputPair example33_pair(double gamma = 0.0);

/// Closed-form transfer function of U0 (a 1 x 7 row, polynomial over
/// 4 - lambda_1 lambda_2, analytic well past the closed ball).
ComplexMatrix example33_closed_form(const BallPoint& lambda);

/// Closed form of the resolvent row C (I - Z(lambda) A_gamma)^{-1}; the same
/// for every gamma.
ComplexMatrix example33_resolvent_row(const BallPoint& lambda);

/// Evaluator backed by the closed form.
SchurEvaluator example33_schur();

/// |gamma| threshold for contractivity of (C, A_gamma).
double example33_gamma_threshold();

}  // namespace dareal

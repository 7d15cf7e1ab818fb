#pragma once

namespace sjf::tol {

// Positive-definiteness margin for Im(tau).
inline constexpr double eps_pd = 1e-12;
// Relative tolerance for analytic group identities (cocycle etc.).
inline constexpr double rel_identity = 1e-9;
// Relative tolerance for the group action composition law.
inline constexpr double rel_action = 1e-10;
// Condition threshold: |det(c tau + d)| below this aborts evaluation.
inline constexpr double min_jdet = 1e-200;

}  // namespace sjf::tol

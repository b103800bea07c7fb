#pragma once

namespace qge::tol {

// Central numeric tolerance block. Every module reads these defaults;
// callers can override per-operation where an explicit parameter exists.

inline constexpr double kAlgebraic = 1e-9;      // generic closed-form comparisons
inline constexpr double kProbSum = 1e-9;        // |sum(p) - 1|
inline constexpr double kSupport = 1e-12;       // p_i(s_i) > 0 test on mixed profiles
inline constexpr double kEquilibrium = 1e-8;    // exactness bar for solver output
inline constexpr double kHermitian = 1e-10;     // entrywise |rho - rho^dagger|
inline constexpr double kPsd = -1e-9;           // minimum eigenvalue floor
inline constexpr double kTrace = 1e-9;          // |tr(rho) - 1|
inline constexpr double kKraus = 1e-9;          // entrywise |sum A^dagger A - I|
inline constexpr double kUnitary = 1e-10;       // entrywise |U^dagger U - I|
inline constexpr double kSdpGap = 1e-6;         // certified duality-gap bar
inline constexpr double kSdpFeas = -1e-7;       // Y - A_k PSD slack in certificates
inline constexpr double kPovmSum = 1e-8;        // entrywise |sum E - I|
inline constexpr double kProductState = 1e-8;   // Frobenius distance for the product test
inline constexpr double kLpFeas = 1e-9;         // LP residual bar

}  // namespace qge::tol

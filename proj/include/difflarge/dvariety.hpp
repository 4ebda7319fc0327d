#pragma once

#include "difflarge/reduction.hpp"

namespace difflarge {

// The section x_n -> h / s_f of the jet hypersurface f = 0, inducing the
// derivation D_s on K(x_0..x_n).
struct SectionData {
    DiffPoly f;
    unsigned order = 0;
    DiffPoly numerator_h;
    DiffPoly separant;
};

// h = -(f^delta + sum_{i<n} x_{i+1} df/dx_i). Verifies D_s(f) = 0; throws
// ZeroSeparant or OrderUndefined.
SectionData section_numerator(const DiffPoly& f);

// D_s(e) for e a rational function in the generators and x_0..x_n.
RatFunc section_derive(const RatFunc& e, const SectionData& s);

enum class JetMode {
    Symbolic,     // iterate D_s on x_n, then evaluate
    Prolongation  // c_{n+k} = -R_k(c) / s_f(c) from D^k f = s_f x_{n+k} + R_k
};

// c extended to (c_0..c_N). Throws PreconditionFailed unless f(c) = 0 and
// s_f(c) != 0, InvalidArgument when N < ord f or the jet has the wrong length.
Jet jet_extend(const DiffPoly& f, const Jet& c, unsigned N, JetMode mode = JetMode::Symbolic);

struct DPointReport {
    bool on_locus = false;
    bool smooth = false;
    bool avoids = false;
};

// Throws JetTooShort / InvalidArgument on a length mismatch.
DPointReport dpoint_check(const DLProblem& p, const Jet& c);

} // namespace difflarge

#ifndef CML_TRANSFORMS_HPP
#define CML_TRANSFORMS_HPP

#include "cml/formula.hpp"

namespace cml {

/// The forced-convergence clamp: out_0 = in_0 and
///   out_{m+1} = max(out_m - s_m, min(out_m + s_m, in_{m+1}))
/// with s_m = step.at(m), built from basis connectives. The output
/// satisfies |out_m - out_{m+1}| <= s_m pointwise on every structure, and
/// equals the input pointwise wherever the input already satisfies the
/// step bounds. The claimed schedule of the output is the geometric tail
/// bound step.tail().
FormulaSequence force_convergence(const FormulaSequence& seq, const RateSchedule& step);

/// Hanson's pseudo-metrization: for a sequence in frame (x, y),
///   e_k(x, y) = sup_z |d_k(x, z) - d_k(y, z)|.
/// Every output entry is a pseudo-metric formula on every structure; on a
/// structure where d_k is already a pseudo-metric, e_k equals d_k.
FormulaSequence pseudometrize(const FormulaSequence& seq);

}  // namespace cml

#endif

#include "seqlab/projection.hpp"

namespace seqlab {

double pair(const Seq& a, const Seq& x) {
  require_same_length(a, x);
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
  return s;
}

Seq ProjectionOp::apply(const Seq& x) const {
  Seq out(x.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const double c = pair(functionals[k], x);
    if (c != 0.0) out = axpy(c, vectors[k], out);
  }
  return out;
}

}  // namespace seqlab

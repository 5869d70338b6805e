#include "vfpns/field.hpp"

namespace vfpns {

void phase_lincomb(double a, const PhaseField& f, double b, const PhaseField& g, PhaseField& out) {
    const double* pf = f.data();
    const double* pg = g.data();
    double* po = out.data();
    const size_t n = f.size();
    for (size_t k = 0; k < n; ++k)
        po[k] = a * pf[k] + b * pg[k];
}

void phase_axpy(double s, const PhaseField& f, PhaseField& out) {
    const double* pf = f.data();
    double* po = out.data();
    const size_t n = f.size();
    for (size_t k = 0; k < n; ++k)
        po[k] += s * pf[k];
}

} // namespace vfpns

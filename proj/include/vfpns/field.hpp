#pragma once

#include <cstddef>
#include <vector>

namespace vfpns {

// Storage conventions shared by every module:
//  - spatial fields are (nx+2) x (nx+2) with one ghost ring; interior indices
//    run 1..nx, ghosts sit at 0 and nx+1; the x index j is fastest;
//  - phase-space fields keep one contiguous nv*nv velocity block per spatial
//    cell, velocity index (m + nv*mp) with m (the v1 index) fastest;
//  - velocity ghosts are never stored: kernels treat values beyond the
//    velocity box as zero.

/// Scalar field on the 2D cell-centered grid, one ghost ring per side.
class Field2D {
public:
    Field2D() = default;
    explicit Field2D(int nx, double value = 0.0)
        : nx_(nx), a_(static_cast<size_t>(nx + 2) * (nx + 2), value) {}

    int nx() const { return nx_; }
    double& operator()(int j, int jp) { return a_[idx(j, jp)]; }
    double operator()(int j, int jp) const { return a_[idx(j, jp)]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }
    size_t size() const { return a_.size(); }

    void fill(double v) { a_.assign(a_.size(), v); }

private:
    size_t idx(int j, int jp) const {
        return static_cast<size_t>(j) + static_cast<size_t>(nx_ + 2) * jp;
    }
    int nx_ = 0;
    std::vector<double> a_;
};

/// Two-component vector field (fluid velocity, momentum densities, gradients).
struct VecField2D {
    Field2D x, y;

    VecField2D() = default;
    explicit VecField2D(int nx, double value = 0.0) : x(nx, value), y(nx, value) {}
    int nx() const { return x.nx(); }
};

/// Per-species distribution on the 4D phase grid with a spatial ghost ring.
class PhaseField {
public:
    PhaseField() = default;
    PhaseField(int nx, int nv)
        : nx_(nx), nv_(nv),
          a_(static_cast<size_t>(nx + 2) * (nx + 2) * nv * nv, 0.0) {}

    int nx() const { return nx_; }
    int nv() const { return nv_; }
    size_t block_size() const { return static_cast<size_t>(nv_) * nv_; }
    size_t size() const { return a_.size(); }

    double* block(int j, int jp) { return a_.data() + block_size() * cell(j, jp); }
    const double* block(int j, int jp) const { return a_.data() + block_size() * cell(j, jp); }

    /// Value at spatial cell (j,jp), velocity cell (m,mp); all 0-based with
    /// spatial interior at 1..nx.
    double& at(int j, int jp, int m, int mp) {
        return a_[block_size() * cell(j, jp) + m + static_cast<size_t>(nv_) * mp];
    }
    double at(int j, int jp, int m, int mp) const {
        return a_[block_size() * cell(j, jp) + m + static_cast<size_t>(nv_) * mp];
    }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    void fill(double v) { a_.assign(a_.size(), v); }

private:
    size_t cell(int j, int jp) const {
        return static_cast<size_t>(j) + static_cast<size_t>(nx_ + 2) * jp;
    }
    int nx_ = 0;
    int nv_ = 0;
    std::vector<double> a_;
};

// Whole-array linear combinations used when assembling kinetic right-hand sides.

/// out = a*f + b*g (all same shape).
void phase_lincomb(double a, const PhaseField& f, double b, const PhaseField& g, PhaseField& out);

/// out += s*f.
void phase_axpy(double s, const PhaseField& f, PhaseField& out);

} // namespace vfpns

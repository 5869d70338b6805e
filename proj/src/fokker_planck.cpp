#include "vfpns/fokker_planck.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <vector>

#include "vfpns/errors.hpp"
#include "vfpns/moments.hpp"

namespace vfpns {

void mbar_block(const double* sm, int nv, double* out) {
    for (int mp = 0; mp < nv; ++mp) {
        const double* row = sm + static_cast<size_t>(nv) * mp;
        const double* rs = mp > 0 ? row - nv : nullptr;
        const double* rn = mp < nv - 1 ? row + nv : nullptr;
        double* orow = out + static_cast<size_t>(nv) * mp;
        for (int m = 0; m < nv; ++m) {
            double num = 0.0;
            if (m > 0) num += row[m - 1];
            if (m < nv - 1) num += row[m + 1];
            if (rs) num += rs[m];
            if (rn) num += rn[m];
            orow[m] = num / row[m];
        }
    }
}

void apply_ltilde_block(const double* h, const double* mbar, int nv, double dv, double* out) {
    const double inv = 1.0 / (dv * dv);
    for (int mp = 0; mp < nv; ++mp) {
        const double* row = h + static_cast<size_t>(nv) * mp;
        const double* rs = mp > 0 ? row - nv : nullptr;
        const double* rn = mp < nv - 1 ? row + nv : nullptr;
        const double* mrow = mbar + static_cast<size_t>(nv) * mp;
        double* orow = out + static_cast<size_t>(nv) * mp;
        for (int m = 0; m < nv; ++m) {
            double s = 0.0;
            if (m > 0) s += row[m - 1];
            if (m < nv - 1) s += row[m + 1];
            if (rs) s += rs[m];
            if (rn) s += rn[m];
            orow[m] = (s - mrow[m] * row[m]) * inv;
        }
    }
}

void apply_fp_system_block(const double* h, const double* mbar, double coef, int nv, double* out) {
    for (int mp = 0; mp < nv; ++mp) {
        const double* row = h + static_cast<size_t>(nv) * mp;
        const double* rs = mp > 0 ? row - nv : nullptr;
        const double* rn = mp < nv - 1 ? row + nv : nullptr;
        const double* mrow = mbar + static_cast<size_t>(nv) * mp;
        double* orow = out + static_cast<size_t>(nv) * mp;
        for (int m = 0; m < nv; ++m) {
            double s = 0.0;
            if (m > 0) s += row[m - 1];
            if (m < nv - 1) s += row[m + 1];
            if (rs) s += rs[m];
            if (rn) s += rn[m];
            orow[m] = row[m] + coef * (mrow[m] * row[m] - s);
        }
    }
}

namespace {

struct CellWorst {
    bool failed = false;
    double resid = 0.0;
    int j = -1, jp = -1;
};

// One-cell CG solve; returns iterations, sets rel_resid (f-weighted).
int cg_cell(const double* mbar, const double* sqrtm, double coef, int nv, double tol, int max_iter,
            bool jacobi, std::vector<double>& x, std::vector<double>& r, std::vector<double>& p,
            std::vector<double>& ap, std::vector<double>& z, double bw, double& rel_resid) {
    const size_t n = static_cast<size_t>(nv) * nv;
    auto wnorm = [&](const std::vector<double>& vec) {
        double s = 0.0;
        for (size_t k = 0; k < n; ++k) {
            const double t = sqrtm[k] * vec[k];
            s += t * t;
        }
        return std::sqrt(s);
    };
    // x holds the initial guess (the rhs); r = b - A x with b still in r.
    apply_fp_system_block(x.data(), mbar, coef, nv, ap.data());
    for (size_t k = 0; k < n; ++k) r[k] -= ap[k];

    double res = wnorm(r);
    rel_resid = res / bw;
    if (rel_resid <= tol) return 0;

    double rz = 0.0;
    for (size_t k = 0; k < n; ++k) {
        z[k] = jacobi ? r[k] / (1.0 + coef * mbar[k]) : r[k];
        rz += r[k] * z[k];
        p[k] = z[k];
    }
    int it = 0;
    while (it < max_iter) {
        ++it;
        apply_fp_system_block(p.data(), mbar, coef, nv, ap.data());
        double pap = 0.0;
        for (size_t k = 0; k < n; ++k) pap += p[k] * ap[k];
        if (!(pap > 0.0)) break;  // loss of positive definiteness: bail out
        const double alpha = rz / pap;
        for (size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        res = wnorm(r);
        rel_resid = res / bw;
        if (rel_resid <= tol) return it;
        double rz_new = 0.0;
        for (size_t k = 0; k < n; ++k) {
            z[k] = jacobi ? r[k] / (1.0 + coef * mbar[k]) : r[k];
            rz_new += r[k] * z[k];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    return it;
}

} // namespace

FpStats solve_fp(const PhaseField& rhs, const VecField2D& u_new, const Field2D& eps, int size,
                 double dt, int order, const Grid& g, const SolverOptions& opt, ThreadPool* pool,
                 PhaseField& f_out) {
    const int nv = g.nv;
    const size_t bs = static_cast<size_t>(nv) * nv;
    const double lam_base = (order == 1 ? dt : 2.0 * dt / 3.0) / SchemeParams::size_pow53(size);
    const double denom = order == 1 ? 1.0 : 3.0;
    const int max_iter = opt.max_iter_factor * nv * nv;
    constexpr double kSqrtMFloor = 1e-300;

    FpStats stats;
    stats.min_f = std::numeric_limits<double>::infinity();
    CellWorst worst;
    std::mutex merge_mutex;

    const long ncells = static_cast<long>(g.nx) * g.nx;
    auto body = [&](long b, long e) {
        std::vector<double> sqrtm(bs), mbar(bs), x(bs), r(bs), p(bs), ap(bs), z(bs);
        long chunk_iters = 0;
        int chunk_max = 0;
        double chunk_min_f = std::numeric_limits<double>::infinity();
        CellWorst chunk_worst;
        for (long c = b; c < e; ++c) {
            const int j = static_cast<int>(c % g.nx) + 1;
            const int jp = static_cast<int>(c / g.nx) + 1;
            const double* rblk = rhs.block(j, jp);
            double* fblk = f_out.block(j, jp);

            double bw = 0.0;  // ||rhs||_2 / denom == f-weighted norm of b
            for (size_t k = 0; k < bs; ++k) bw += rblk[k] * rblk[k];
            bw = std::sqrt(bw) / denom;
            if (bw == 0.0) {
                for (size_t k = 0; k < bs; ++k) fblk[k] = 0.0;
                continue;
            }

            sqrt_maxwellian_block(size, u_new.x(j, jp), u_new.y(j, jp), g, sqrtm.data());
            mbar_block(sqrtm.data(), nv, mbar.data());
            const double coef = lam_base / eps(j, jp) / (g.dv * g.dv);
            for (size_t k = 0; k < bs; ++k) {
                const double bk = rblk[k] / (denom * std::max(sqrtm[k], kSqrtMFloor));
                x[k] = bk;
                r[k] = bk;
            }
            double rel = 0.0;
            const int it = cg_cell(mbar.data(), sqrtm.data(), coef, nv, opt.tol_cg_fp, max_iter,
                                   opt.fp_jacobi, x, r, p, ap, z, bw, rel);
            chunk_iters += it;
            chunk_max = std::max(chunk_max, it);
            if (rel > opt.tol_cg_fp && rel > chunk_worst.resid) {
                chunk_worst.failed = true;
                chunk_worst.resid = rel;
                chunk_worst.j = j;
                chunk_worst.jp = jp;
            }
            for (size_t k = 0; k < bs; ++k) {
                double fv = x[k] * sqrtm[k];
                chunk_min_f = std::min(chunk_min_f, fv);
                if (opt.clip_negative_f && fv < 0.0) fv = 0.0;
                fblk[k] = fv;
            }
        }
        std::lock_guard<std::mutex> lk(merge_mutex);
        stats.total_iters += chunk_iters;
        stats.max_iters = std::max(stats.max_iters, chunk_max);
        stats.min_f = std::min(stats.min_f, chunk_min_f);
        if (chunk_worst.failed && chunk_worst.resid > worst.resid) worst = chunk_worst;
    };
    if (pool)
        pool->parallel_for(ncells, default_chunk(ncells), body);
    else
        body(0, ncells);

    if (worst.failed) {
        std::ostringstream os;
        os << "fokker-planck cg failed to converge: worst relative residual " << worst.resid
           << " at cell (" << worst.j << "," << worst.jp << "), species size " << size;
        throw SolverError(os.str());
    }
    if (!std::isfinite(stats.min_f)) stats.min_f = 0.0;
    return stats;
}

} // namespace vfpns

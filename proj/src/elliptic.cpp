#include "fde/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fde {

FaceGeometry face_geometry(int face) {
    int axis = face / 2;
    int side = face % 2;
    Vec3 n{};
    double s = side == 0 ? -1.0 : 1.0;
    if (axis == 0) n = {s, 0, 0};
    if (axis == 1) n = {0, s, 0};
    if (axis == 2) n = {0, 0, s};
    return {axis, side, n};
}

namespace {

// tangential axes of a face, lower index first
std::array<int, 2> tangent_axes(int axis) {
    if (axis == 0) return {1, 2};
    if (axis == 1) return {0, 2};
    return {0, 1};
}

}  // namespace

double face_node_weight(const Grid& grid, int face, int a, int b) {
    auto fg = face_geometry(face);
    auto t = tangent_axes(fg.axis);
    double ha = (&grid.h.x)[t[0]], hb = (&grid.h.x)[t[1]];
    double wa = (a == 0 || a == grid.nodes[t[0]] - 1) ? 0.5 : 1.0;
    double wb = (b == 0 || b == grid.nodes[t[1]] - 1) ? 0.5 : 1.0;
    return ha * hb * wa * wb;
}

Vec3 face_node_point(const Grid& grid, int face, int a, int b) {
    auto fg = face_geometry(face);
    auto t = tangent_axes(fg.axis);
    int ijk[3];
    ijk[fg.axis] = fg.side == 0 ? 0 : grid.nodes[fg.axis] - 1;
    ijk[t[0]] = a;
    ijk[t[1]] = b;
    return grid.point(ijk[0], ijk[1], ijk[2]);
}

std::vector<BoundaryNodeRef> boundary_nodes(const Grid& grid) {
    std::vector<BoundaryNodeRef> out;
    for (int face = 0; face < 6; ++face) {
        auto fg = face_geometry(face);
        auto t = tangent_axes(fg.axis);
        for (int b = 0; b < grid.nodes[t[1]]; ++b)
            for (int a = 0; a < grid.nodes[t[0]]; ++a) out.push_back({face, a, b});
    }
    return out;
}

SparseOperator assemble(const Grid& grid, const ScalarField3D& alpha_field, double tau) {
    if (!(tau > 1.0)) throw ConfigError("assemble: tau must exceed 1");
    SparseOperator op;
    op.n = grid.interior_count();
    op.row_ptr.reserve(op.n + 1);
    op.row_ptr.push_back(0);
    op.col.reserve(op.n * 7);
    op.val.reserve(op.n * 7);
    op.diag_shift.resize(op.n);
    double ix = 1.0 / (grid.h.x * grid.h.x);
    double iy = 1.0 / (grid.h.y * grid.h.y);
    double iz = 1.0 / (grid.h.z * grid.h.z);
    double diag_lap = 2.0 * (ix + iy + iz);
    double log_tau = std::log(tau);
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i) {
                std::size_t r = grid.interior_index(i, j, k);
                op.diag_shift[r] =
                    std::exp(alpha_field.data[alpha_field.index(i, j, k)] * log_tau);
                auto push = [&](int ii, int jj, int kk, double v) {
                    if (grid.is_interior(ii, jj, kk)) {
                        op.col.push_back(
                            static_cast<std::int32_t>(grid.interior_index(ii, jj, kk)));
                        op.val.push_back(v);
                    }
                };
                push(i, j, k, diag_lap);
                push(i - 1, j, k, -ix);
                push(i + 1, j, k, -ix);
                push(i, j - 1, k, -iy);
                push(i, j + 1, k, -iy);
                push(i, j, k - 1, -iz);
                push(i, j, k + 1, -iz);
                op.row_ptr.push_back(static_cast<std::int64_t>(op.col.size()));
            }
    return op;
}

template <class T>
CgStats cg_solve(const SparseOperator& op, const std::vector<T>& shift,
                 const std::vector<T>& rhs, std::vector<T>& x, double rel_tol, int max_iter) {
    const std::size_t n = op.n;
    x.assign(n, T(0));
    double bnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) bnorm += std::norm(rhs[i]);
    bnorm = std::sqrt(bnorm);
    CgStats st;
    if (bnorm == 0.0) return st;  // x = 0 is exact

    // Jacobi diagonal: CSR diagonal entry plus the shift
    std::vector<T> diag(n);
    for (std::size_t r = 0; r < n; ++r) {
        double d = 0.0;
        for (std::int64_t t = op.row_ptr[r]; t < op.row_ptr[r + 1]; ++t)
            if (op.col[t] == static_cast<std::int32_t>(r)) d = op.val[t];
        diag[r] = d + shift[r];
    }
    std::vector<T> r = rhs, z(n), p(n), q(n);
    auto precond = [&](const std::vector<T>& in, std::vector<T>& out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / diag[i];
    };
    auto dotu = [&](const std::vector<T>& a, const std::vector<T>& b) {
        T acc(0);
        for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
        return acc;
    };
    precond(r, z);
    p = z;
    T rho = dotu(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        op.apply(p, shift, q);
        T pq = dotu(p, q);
        T alpha = rho / pq;
        double rnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
            rnorm += std::norm(r[i]);
        }
        st.iterations = it;
        st.rel_residual = std::sqrt(rnorm) / bnorm;
        if (st.rel_residual <= rel_tol) return st;
        precond(r, z);
        T rho_new = dotu(r, z);
        T beta = rho_new / rho;
        rho = rho_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    st.converged = false;
    return st;
}

template CgStats cg_solve<double>(const SparseOperator&, const std::vector<double>&,
                                  const std::vector<double>&, std::vector<double>&, double, int);
template CgStats cg_solve<std::complex<double>>(const SparseOperator&,
                                                const std::vector<std::complex<double>>&,
                                                const std::vector<std::complex<double>>&,
                                                std::vector<std::complex<double>>&, double, int);

namespace {

int iteration_cap(std::size_t n) {
    // 20 * N^{1/3} * sqrt(kappa)-style heuristic; the mesh dimension drives kappa
    double cube = std::cbrt(static_cast<double>(n));
    return std::max(200, static_cast<int>(20.0 * cube));
}

ScalarField3D empty_field(const Grid& grid) {
    ScalarField3D f;
    f.nodes = grid.nodes;
    f.origin = grid.box.lo;
    f.spacing = grid.h;
    f.data.assign(grid.node_count(), 0.0);
    return f;
}

void check_converged(const CgStats& st, const char* what) {
    if (!st.converged) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "%s: CG did not converge within the iteration cap "
                      "(relative residual %.3e after %d iterations)",
                      what, st.rel_residual, st.iterations);
        throw NumericalError(buf);
    }
}

}  // namespace

SolveResult solve_scattered(const Grid& grid, const ProblemConfig& config,
                            const BackgroundEvaluator& bg, double rel_tol) {
    ScalarField3D alpha = order_field(config);
    double tau = bg.params().tau;
    SparseOperator op = assemble(grid, alpha, tau);
    double tau_a0 = std::pow(tau, config.alpha0);

    // right-hand side -(tau^alpha - tau^alpha0) w0, supported on D; pick the
    // common scale from the largest w0 over the support
    std::vector<ScaledValue> w0_sup(op.n);
    double s0 = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i) {
                if (alpha.data[alpha.index(i, j, k)] == config.alpha0) continue;
                std::size_t r = grid.interior_index(i, j, k);
                w0_sup[r] = bg.w0(grid.point(i, j, k));
                s0 = std::max(s0, w0_sup[r].log_abs());
                any = true;
            }
    SolveResult out;
    out.field = empty_field(grid);
    if (!any) {
        out.field.log_scale = 0.0;
        return out;  // h == 0: z vanishes identically
    }
    std::vector<double> rhs(op.n, 0.0);
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i) {
                std::size_t r = grid.interior_index(i, j, k);
                if (w0_sup[r].is_zero()) continue;
                double shift = op.diag_shift[r] - tau_a0;
                rhs[r] = -shift * w0_sup[r].mantissa *
                         std::exp(w0_sup[r].log_scale - s0);
            }
    std::vector<double> x;
    out.stats = cg_solve(op, op.diag_shift, rhs, x, rel_tol, iteration_cap(op.n));
    check_converged(out.stats, "solve_scattered");
    out.field.log_scale = s0;
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i)
                out.field.data[out.field.index(i, j, k)] = x[grid.interior_index(i, j, k)];
    return out;
}

SolveResult solve_total(const Grid& grid, const ProblemConfig& config,
                        const BackgroundEvaluator& bg, double rel_tol) {
    ScalarField3D alpha = order_field(config);
    double tau = bg.params().tau;
    SparseOperator op = assemble(grid, alpha, tau);

    // Dirichlet data w0 on the boundary layer; scale by the largest boundary value
    ScalarField3D w0b = empty_field(grid);
    double s0 = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.nodes[2]; ++k)
        for (int j = 0; j < grid.nodes[1]; ++j)
            for (int i = 0; i < grid.nodes[0]; ++i) {
                bool bdry = !grid.is_interior(i, j, k);
                if (!bdry) continue;
                ScaledValue v = bg.w0(grid.point(i, j, k));
                s0 = std::max(s0, v.log_abs());
                w0b.data[w0b.index(i, j, k)] = v.mantissa;  // rescaled below
            }
    // second pass now that the scale is known
    for (int k = 0; k < grid.nodes[2]; ++k)
        for (int j = 0; j < grid.nodes[1]; ++j)
            for (int i = 0; i < grid.nodes[0]; ++i) {
                if (grid.is_interior(i, j, k)) continue;
                ScaledValue v = bg.w0(grid.point(i, j, k));
                w0b.data[w0b.index(i, j, k)] = v.mantissa * std::exp(v.log_scale - s0);
            }
    double ix = 1.0 / (grid.h.x * grid.h.x);
    double iy = 1.0 / (grid.h.y * grid.h.y);
    double iz = 1.0 / (grid.h.z * grid.h.z);
    std::vector<double> rhs(op.n, 0.0);
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i) {
                std::size_t r = grid.interior_index(i, j, k);
                auto add = [&](int ii, int jj, int kk, double coef) {
                    if (!grid.is_interior(ii, jj, kk))
                        rhs[r] += coef * w0b.data[w0b.index(ii, jj, kk)];
                };
                add(i - 1, j, k, ix);
                add(i + 1, j, k, ix);
                add(i, j - 1, k, iy);
                add(i, j + 1, k, iy);
                add(i, j, k - 1, iz);
                add(i, j, k + 1, iz);
            }
    std::vector<double> x;
    SolveResult out;
    out.stats = cg_solve(op, op.diag_shift, rhs, x, rel_tol, iteration_cap(op.n));
    check_converged(out.stats, "solve_total");
    out.field = w0b;
    out.field.log_scale = s0;
    for (int k = 1; k < grid.nodes[2] - 1; ++k)
        for (int j = 1; j < grid.nodes[1] - 1; ++j)
            for (int i = 1; i < grid.nodes[0] - 1; ++i)
                out.field.data[out.field.index(i, j, k)] = x[grid.interior_index(i, j, k)];
    return out;
}

BoundaryField neumann_trace(const ScalarField3D& field, const Grid& grid, int order) {
    if (order != 1 && order != 2) throw ConfigError("neumann_trace: order must be 1 or 2");
    if (order == 2 && (grid.nodes[0] < 4 || grid.nodes[1] < 4 || grid.nodes[2] < 4))
        throw ConfigError("neumann_trace: grid too coarse for the order-2 stencil");
    BoundaryField bf;
    bf.log_scale = field.log_scale;
    for (int face = 0; face < 6; ++face) {
        auto fg = face_geometry(face);
        auto t = tangent_axes(fg.axis);
        int na = grid.nodes[t[0]], nb = grid.nodes[t[1]];
        bf.values[face].resize(static_cast<std::size_t>(na) * nb);
        double h = (&grid.h.x)[fg.axis];
        int bidx = fg.side == 0 ? 0 : grid.nodes[fg.axis] - 1;
        int step = fg.side == 0 ? 1 : -1;  // inward
        for (int b = 0; b < nb; ++b)
            for (int a = 0; a < na; ++a) {
                int ijk[3];
                ijk[t[0]] = a;
                ijk[t[1]] = b;
                auto at = [&](int depth) {
                    ijk[fg.axis] = bidx + step * depth;
                    return field.data[field.index(ijk[0], ijk[1], ijk[2])];
                };
                double d;
                if (order == 1)
                    d = (at(0) - at(1)) / h;
                else
                    d = (3.0 * at(0) - 4.0 * at(1) + at(2)) / (2.0 * h);
                bf.values[face][static_cast<std::size_t>(b) * na + a] = d;
            }
    }
    return bf;
}

}  // namespace fde

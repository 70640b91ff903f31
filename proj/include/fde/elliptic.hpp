#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "fde/geometry.hpp"
#include "fde/scaled.hpp"
#include "fde/special.hpp"

namespace fde {

/// Node-centered finite-difference grid over the box: (n+1) nodes per axis,
/// Dirichlet values live on the outermost node layer, unknowns inside.
struct Grid {
    BoxDomain box;
    std::array<int, 3> nodes;  // n+1 per axis
    Vec3 h;

    explicit Grid(const BoxDomain& b)
        : box(b), nodes{b.n[0] + 1, b.n[1] + 1, b.n[2] + 1}, h(b.spacing()) {}

    std::size_t node_count() const {
        return static_cast<std::size_t>(nodes[0]) * nodes[1] * nodes[2];
    }
    std::size_t interior_count() const {
        return static_cast<std::size_t>(nodes[0] - 2) * (nodes[1] - 2) * (nodes[2] - 2);
    }
    std::size_t node_index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * nodes[1] + j) * nodes[0] + i;
    }
    /// Linear index among interior nodes; (i,j,k) are full-grid coordinates.
    std::size_t interior_index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k - 1) * (nodes[1] - 2) + (j - 1)) * (nodes[0] - 2) +
               (i - 1);
    }
    bool is_interior(int i, int j, int k) const {
        return i > 0 && i < nodes[0] - 1 && j > 0 && j < nodes[1] - 1 && k > 0 &&
               k < nodes[2] - 1;
    }
    Vec3 point(int i, int j, int k) const {
        return {box.lo.x + i * h.x, box.lo.y + j * h.y, box.lo.z + k * h.z};
    }
};

/// Face ids 0..5 = (-x, +x, -y, +y, -z, +z); nodes per face are row-major in
/// the two tangential axes (lower axis index fastest).
struct FaceGeometry {
    int axis;       // normal axis
    int side;       // 0 = low, 1 = high
    Vec3 normal;
};
FaceGeometry face_geometry(int face);

/// Trapezoidal area weight of a face node (corners 1/4, edges 1/2).
double face_node_weight(const Grid& grid, int face, int a, int b);

/// Point of face node (a,b) on the given face.
Vec3 face_node_point(const Grid& grid, int face, int a, int b);

/// Face-major enumeration of boundary nodes (face 0..5, row-major per face).
struct BoundaryNodeRef {
    int face;
    int a, b;
};
std::vector<BoundaryNodeRef> boundary_nodes(const Grid& grid);

/// Per-face boundary values (Dirichlet data or Neumann traces) with a common
/// exponential scale.
struct BoundaryField {
    std::array<std::vector<double>, 6> values;
    double log_scale = 0.0;
};

/// 7-point discretization of -Laplace (symmetric CSR over interior nodes)
/// plus a separate diagonal shift tau^{alpha(x)}.  The shift is kept apart so
/// the Bromwich path can reuse the Laplacian with a complex shift.
struct SparseOperator {
    std::size_t n = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> col;
    std::vector<double> val;          // -Laplacian part (symmetric)
    std::vector<double> diag_shift;   // tau^{alpha(x)} per row

    /// y = (-Laplace + diag(shift)) x
    template <class T>
    void apply(const std::vector<T>& x, const std::vector<T>& shift, std::vector<T>& y) const {
        for (std::size_t r = 0; r < n; ++r) {
            T acc = shift[r] * x[r];
            for (std::int64_t t = row_ptr[r]; t < row_ptr[r + 1]; ++t)
                acc += val[t] * x[col[t]];
            y[r] = acc;
        }
    }
};

SparseOperator assemble(const Grid& grid, const ScalarField3D& alpha_field, double tau);

struct CgStats {
    double rel_residual = 0.0;
    int iterations = 0;
    bool converged = true;
};

/// Jacobi-preconditioned conjugate gradients on (-Laplace + diag(shift));
/// for complex scalars this is COCG (unconjugated inner products) on the
/// complex-symmetric operator.
template <class T>
CgStats cg_solve(const SparseOperator& op, const std::vector<T>& shift,
                 const std::vector<T>& rhs, std::vector<T>& x, double rel_tol, int max_iter);

struct SolveResult {
    ScalarField3D field;   // full node array; boundary layer filled per problem
    CgStats stats;
};

/// Scattered field z = w - w0: (-Laplace + tau^alpha) z = -(tau^alpha - tau^alpha0) w0
/// with zero Dirichlet data; right side supported on D only.  Solved on
/// exp-rescaled unknowns so CG sees O(1) magnitudes.
SolveResult solve_scattered(const Grid& grid, const ProblemConfig& config,
                            const BackgroundEvaluator& bg, double rel_tol = 1e-10);

/// Total field w with Dirichlet data w0 on the box boundary.
SolveResult solve_total(const Grid& grid, const ProblemConfig& config,
                        const BackgroundEvaluator& bg, double rel_tol = 1e-10);

/// One-sided normal-derivative trace on all six faces (order 1 or 2).
BoundaryField neumann_trace(const ScalarField3D& field, const Grid& grid, int order);

}  // namespace fde

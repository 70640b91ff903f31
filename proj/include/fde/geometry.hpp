#pragma once

#include <array>
#include <string>
#include <vector>

#include "fde/errors.hpp"
#include "fde/vec3.hpp"

namespace fde {

/// Axis-aligned computational box with per-axis cell counts.
struct BoxDomain {
    Vec3 lo, hi;
    std::array<int, 3> n = {8, 8, 8};

    void validate() const;
    Vec3 spacing() const {
        return {(hi.x - lo.x) / n[0], (hi.y - lo.y) / n[1], (hi.z - lo.z) / n[2]};
    }
    /// Largest distance from p to a point of the closed box.
    double max_corner_distance(Vec3 p) const;
};

struct BallRegion {
    Vec3 center;
    double radius = 0.0;

    bool contains(Vec3 x) const { return norm(x - center) < radius; }
};

enum class ProbeFlavor { ext, interior };

/// Probe source geometry: a ball outside the domain (ext) or a concentric
/// shell enclosing it (int).
struct ProbeConfig {
    ProbeFlavor flavor = ProbeFlavor::ext;
    int m = 0;
    Vec3 p;
    double eta = 0.0;      // ext only
    double r1 = 0.0, r2 = 0.0;  // int only

    void validate(const BoxDomain& box) const;
};

enum class JumpKind { constant, power };

/// Shape of the order deviation h on D: either a constant amplitude or
/// amplitude * dist(x, boundary of D)^gamma.
struct JumpProfile {
    JumpKind kind = JumpKind::constant;
    double amplitude = 0.0;  // signed
    double gamma = 0.0;      // >= 0, used by the power kind
};

struct ProblemConfig {
    double alpha0 = 0.5;
    BoxDomain box;
    std::vector<BallRegion> obstacle;  // D as a union of disjoint balls; empty = no jump
    JumpProfile jump;

    void validate() const;
    /// alpha(x) = alpha0 outside D, alpha0 + h(x) inside.
    double alpha_at(Vec3 x) const;
    /// h(x) for x in D, 0 outside.
    double jump_at(Vec3 x) const;
};

/// inf over x in D of |x - p|; 0 if p lies inside D.
double dist_point_to_set(Vec3 p, const std::vector<BallRegion>& D);

/// sup over x in D of |x - p|.
double radius_of_enclosure(Vec3 p, const std::vector<BallRegion>& D);

/// dist(K, D): dist(p,D) - eta for ext probes, R1 - R_D(p) for int probes.
double probe_distance(const ProbeConfig& probe, const std::vector<BallRegion>& D);

/// Distance from x to the boundary of D for x inside D; 0 outside.
double dist_to_boundary_of_D(Vec3 x, const std::vector<BallRegion>& D);

/// Grid-sampled scalar with uniform cell geometry; values live at the
/// (n+1)^3 grid nodes of the box.
struct ScalarField3D {
    std::array<int, 3> nodes = {0, 0, 0};
    Vec3 origin;
    Vec3 spacing;
    std::vector<double> data;       // row-major, x fastest
    double log_scale = 0.0;         // common exp() factor for all values

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * nodes[1] + j) * nodes[0] + i;
    }
    Vec3 point(int i, int j, int k) const {
        return {origin.x + i * spacing.x, origin.y + j * spacing.y, origin.z + k * spacing.z};
    }
};

/// Samples alpha(x) at the grid nodes and validates it stays in (0,1).
ScalarField3D order_field(const ProblemConfig& config);

}  // namespace fde

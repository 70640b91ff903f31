#include "fde/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fde {

void BoxDomain::validate() const {
    if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z))
        throw ConfigError("box: lo must be componentwise below hi");
    for (int a = 0; a < 3; ++a)
        if (n[a] < 8) throw ConfigError("box: at least 8 cells per axis required");
}

double BoxDomain::max_corner_distance(Vec3 p) const {
    double best = 0.0;
    for (int c = 0; c < 8; ++c) {
        Vec3 v{(c & 1) ? hi.x : lo.x, (c & 2) ? hi.y : lo.y, (c & 4) ? hi.z : lo.z};
        best = std::max(best, norm(v - p));
    }
    return best;
}

void ProbeConfig::validate(const BoxDomain& box) const {
    if (m < 0) throw ConfigError("probe: moment index m must be >= 0");
    if (flavor == ProbeFlavor::ext) {
        if (eta <= 0.0) throw ConfigError("probe: eta must be positive");
        // closure of B_eta must not meet the closure of the box
        double dx = std::max({box.lo.x - p.x, 0.0, p.x - box.hi.x});
        double dy = std::max({box.lo.y - p.y, 0.0, p.y - box.hi.y});
        double dz = std::max({box.lo.z - p.z, 0.0, p.z - box.hi.z});
        double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (d <= eta)
            throw ConfigError("probe: probe ball closure meets the domain closure "
                              "(B_eta and Omega must have disjoint closures)");
    } else {
        if (!(0.0 < r1 && r1 < r2))
            throw ConfigError("probe: int probe requires 0 < R1 < R2");
        if (box.max_corner_distance(p) >= r1)
            throw ConfigError("probe: domain is not contained in B_R1 "
                              "(Omega inside B_R1 required)");
    }
}

void ProblemConfig::validate() const {
    box.validate();
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw ConfigError("problem: alpha0 must lie in (0,1)");
    for (const auto& b : obstacle) {
        if (b.radius <= 0.0) throw ConfigError("obstacle: ball radius must be positive");
        if (b.center.x - b.radius <= box.lo.x || b.center.x + b.radius >= box.hi.x ||
            b.center.y - b.radius <= box.lo.y || b.center.y + b.radius >= box.hi.y ||
            b.center.z - b.radius <= box.lo.z || b.center.z + b.radius >= box.hi.z)
            throw ConfigError("obstacle: closure of D must lie inside the domain box");
    }
    for (std::size_t i = 0; i < obstacle.size(); ++i)
        for (std::size_t j = i + 1; j < obstacle.size(); ++j)
            if (norm(obstacle[i].center - obstacle[j].center) <=
                obstacle[i].radius + obstacle[j].radius)
                throw ConfigError("obstacle: balls of D must be pairwise disjoint");
    if (jump.gamma < 0.0) throw ConfigError("jump: gamma must be >= 0");
    // extremal alpha values: constant kind is flat; for the power kind the
    // extremum sits at a ball center (distance to the boundary is maximal there)
    double worst = 0.0;
    if (!obstacle.empty()) {
        if (jump.kind == JumpKind::constant) {
            worst = jump.amplitude;
        } else {
            double rmax = 0.0;
            for (const auto& b : obstacle) rmax = std::max(rmax, b.radius);
            worst = jump.amplitude * std::pow(rmax, jump.gamma);
        }
    }
    double extreme = alpha0 + worst;
    if (!(extreme > 0.0 && extreme < 1.0))
        throw ConfigError("jump: resulting order alpha(x) leaves (0,1)");
}

double ProblemConfig::jump_at(Vec3 x) const {
    double din = dist_to_boundary_of_D(x, obstacle);
    if (din <= 0.0) return 0.0;
    if (jump.kind == JumpKind::constant) return jump.amplitude;
    return jump.amplitude * std::pow(din, jump.gamma);
}

double ProblemConfig::alpha_at(Vec3 x) const { return alpha0 + jump_at(x); }

double dist_point_to_set(Vec3 p, const std::vector<BallRegion>& D) {
    if (D.empty()) throw ConfigError("dist_point_to_set: obstacle list is empty");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : D) best = std::min(best, std::max(norm(p - b.center) - b.radius, 0.0));
    return best;
}

double radius_of_enclosure(Vec3 p, const std::vector<BallRegion>& D) {
    if (D.empty()) throw ConfigError("radius_of_enclosure: obstacle list is empty");
    double best = 0.0;
    for (const auto& b : D) best = std::max(best, norm(p - b.center) + b.radius);
    return best;
}

double probe_distance(const ProbeConfig& probe, const std::vector<BallRegion>& D) {
    if (probe.flavor == ProbeFlavor::ext) return dist_point_to_set(probe.p, D) - probe.eta;
    double rd = radius_of_enclosure(probe.p, D);
    if (rd >= probe.r1) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "obstacle not enclosed: R_D(p) = %.6g >= R1 = %.6g", rd, probe.r1);
        throw ConfigError(buf);
    }
    return probe.r1 - rd;
}

double dist_to_boundary_of_D(Vec3 x, const std::vector<BallRegion>& D) {
    double best = 0.0;
    for (const auto& b : D) best = std::max(best, b.radius - norm(x - b.center));
    return std::max(best, 0.0);
}

ScalarField3D order_field(const ProblemConfig& config) {
    config.validate();
    ScalarField3D f;
    Vec3 h = config.box.spacing();
    f.nodes = {config.box.n[0] + 1, config.box.n[1] + 1, config.box.n[2] + 1};
    f.origin = config.box.lo;
    f.spacing = h;
    f.data.resize(static_cast<std::size_t>(f.nodes[0]) * f.nodes[1] * f.nodes[2]);
    for (int k = 0; k < f.nodes[2]; ++k)
        for (int j = 0; j < f.nodes[1]; ++j)
            for (int i = 0; i < f.nodes[0]; ++i) {
                double a = config.alpha_at(f.point(i, j, k));
                if (!(a > 0.0 && a < 1.0))
                    throw ConfigError("order field leaves (0,1) at a grid node");
                f.data[f.index(i, j, k)] = a;
            }
    return f;
}

}  // namespace fde

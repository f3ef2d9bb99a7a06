#pragma once

// Digit maps f: C -> Gamma with |z - f(z)| <= 1: the nearest-integer map and
// maps defined by partitioning the base parallelogram {0, 1, theta, 1+theta}.

#include "ccf/quad_real.hpp"
#include "ccf/ring.hpp"
#include "ccf/surd.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccf {

enum class TieRule { LexMin };

std::string_view tie_rule_name(TieRule rule);

/// re * x + eta * e <= bound (or < when strict), for a point x + i e sqrt(D).
struct HalfPlane {
    Rational re;
    Rational eta;
    Rational bound;
    bool strict = false;
};

/// |point - center|^2 <= radius_sq (or <), or the complement when !inside.
struct DiskConstraint {
    FieldElement center;
    Rational radius_sq;
    bool inside = true;
    bool strict = false;
};

struct PartitionCell {
    RingElement vertex;  ///< one of 0, 1, theta, 1 + theta
    std::vector<HalfPlane> halfplanes;
    std::vector<DiskConstraint> disks;
};

/// Cells are tried in order; the first one containing the reduced point wins.
struct PartitionSpec {
    Ring ring = Ring::E;
    std::vector<PartitionCell> cells;
    /// Optional certificates: the fundamental set lies in the closed disk of
    /// this radius, and cells at rho^k j in the disk of j_radius.
    std::optional<QuadReal> radius;
    std::optional<QuadReal> j_radius;
};

/// Result of checking that the cells of a partition tile the parallelogram.
struct PartitionGeometry {
    Rational radius_sq;         ///< max distance^2 from a cell to its vertex
    bool validated = false;     ///< cover and disjointness proven exactly
    std::string note;
};

/// Exact polygon computations for halfplane cells; disks only tighten the
/// radius when centered at the cell vertex.
PartitionGeometry analyze_partition(const PartitionSpec& spec);

class AlgorithmSpec {
public:
    enum class Kind { NearestInteger, Partition };

    static AlgorithmSpec nearest_integer(Ring ring, TieRule tie = TieRule::LexMin);
    /// Throws InputError when the cells fail to cover the parallelogram, a
    /// vertex is not a parallelogram corner, or a declared radius is too small.
    static AlgorithmSpec partition(PartitionSpec spec);

    Kind kind() const { return kind_; }
    Ring ring() const { return ring_; }
    TieRule tie_rule() const { return tie_; }
    std::string name() const;
    const PartitionSpec& partition_spec() const { return partition_; }
    const PartitionGeometry& geometry() const { return geometry_; }

    /// The fundamental set lies in the closed disk of this radius.
    const QuadReal& radius() const { return radius_; }
    const QuadReal& radius_sq() const { return radius_sq_; }
    /// Radius bound for cells at rho^k j (Eisenstein verifiers).
    const QuadReal& j_radius() const { return j_radius_; }

    /// Digit for an exact element of K.
    RingElement apply(const FieldElement& z, bool* tie = nullptr) const;
    /// Digit for an exact surd; exact in all cases, including ties.
    RingElement apply(const SurdElement& z, SurdEvaluator& ev, bool* tie = nullptr) const;
    /// Digit for every point of the box, or nullopt when the box straddles
    /// cells. A point box with rational coordinates always resolves.
    std::optional<RingElement> apply(const ComplexBox& z, unsigned bits, bool* tie = nullptr) const;

private:
    Kind kind_ = Kind::NearestInteger;
    Ring ring_ = Ring::Zi;
    TieRule tie_ = TieRule::LexMin;
    PartitionSpec partition_;
    PartitionGeometry geometry_;
    QuadReal radius_, radius_sq_, j_radius_;

    RingElement partition_vertex(const FieldElement& zeta) const;
};

}  // namespace ccf

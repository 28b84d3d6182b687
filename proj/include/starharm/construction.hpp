#pragma once

#include "starharm/domain.hpp"
#include "starharm/measures.hpp"

namespace starharm {

struct BuildOptions {
    int samples = 4096;           ///< initial uniform theta grid
    bool force = false;           ///< build even when the class-A verdict is not "in A"
    bool refine = true;           ///< double the grid until the polyline settles
    double refine_tol = 1e-6;     ///< max |r_2M - r_M| at the new midpoints
    int max_samples = 1 << 16;
    int workers = 1;
    DefectOptions class_options;
};

struct BuildResult {
    StarShapedDomain domain;
    ClassAReport membership;
    int samples = 0;
    double refinement_change = 0.0;  ///< last max |r_2M - r_M|, 0 without refinement
    bool converged = true;
};

/// Domain whose harmonic measure at 0 projects radially onto nu:
/// r(theta) = exp(-u(exp(2 pi i nu(theta)))) with u the circle potential of
/// the inverse of nu. nu must live on [0, 2 pi].
BuildResult build_domain(const SegmentMeasure& nu, const BuildOptions& opt = {});

struct BoundaryPoint {
    double arg;
    double radius;
};

/// Image of e^{i psi} under the boundary extension of the map from the disk:
/// (mu(psi / 2 pi), exp(-u(e^{i psi}))).
BoundaryPoint boundary_correspondence(const InverseProfile& mu, double psi);
BoundaryPoint boundary_correspondence(const SegmentMeasure& nu, double psi);

}  // namespace starharm

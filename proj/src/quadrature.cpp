#include "kgz/quadrature.hpp"

#include <string>

namespace kgz {
namespace {

struct Rule1d {
    int n;
    const double* x;
    const double* w;
};

// Abscissae/weights on [-1,1], symmetric, to full double precision.
const double x1[] = {0.0};
const double w1[] = {2.0};
const double x2[] = {-0.5773502691896257645, 0.5773502691896257645};
const double w2[] = {1.0, 1.0};
const double x3[] = {-0.7745966692414833770, 0.0, 0.7745966692414833770};
const double w3[] = {0.5555555555555555556, 0.8888888888888888889, 0.5555555555555555556};
const double x4[] = {-0.8611363115940525752, -0.3399810435848562648,
                     0.3399810435848562648, 0.8611363115940525752};
const double w4[] = {0.3478548451374538574, 0.6521451548625461426,
                     0.6521451548625461426, 0.3478548451374538574};
const double x5[] = {-0.9061798459386639928, -0.5384693101056830910, 0.0,
                     0.5384693101056830910, 0.9061798459386639928};
const double w5[] = {0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
                     0.4786286704993664680, 0.2369268850561890875};
const double x6[] = {-0.9324695142031520278, -0.6612093864662645137, -0.2386191860831969086,
                     0.2386191860831969086, 0.6612093864662645137, 0.9324695142031520278};
const double w6[] = {0.1713244923791703450, 0.3607615730481386076, 0.4679139345726910474,
                     0.4679139345726910474, 0.3607615730481386076, 0.1713244923791703450};

const Rule1d kRules[] = {{1, x1, w1}, {2, x2, w2}, {3, x3, w3},
                         {4, x4, w4}, {5, x5, w5}, {6, x6, w6}};

}  // namespace

QuadratureRule gauss_rule(int points_per_axis, int dim) {
    if (points_per_axis < 1 || points_per_axis > 6)
        throw InvalidArgument("gauss_rule: points per axis must be in [1,6], got " +
                              std::to_string(points_per_axis));
    if (dim < 1 || dim > 3)
        throw InvalidArgument("gauss_rule: dim must be 1, 2 or 3, got " +
                              std::to_string(dim));
    const Rule1d& r = kRules[points_per_axis - 1];

    QuadratureRule q;
    q.dim = dim;
    q.points_per_axis = points_per_axis;
    int counts[3] = {points_per_axis, dim > 1 ? points_per_axis : 1,
                     dim > 2 ? points_per_axis : 1};
    q.points.reserve(counts[0] * counts[1] * counts[2]);
    q.weights.reserve(counts[0] * counts[1] * counts[2]);
    for (int kz = 0; kz < counts[2]; ++kz)
        for (int ky = 0; ky < counts[1]; ++ky)
            for (int kx = 0; kx < counts[0]; ++kx) {
                Vec3 p{r.x[kx], dim > 1 ? r.x[ky] : 0.0, dim > 2 ? r.x[kz] : 0.0};
                double w = r.w[kx];
                if (dim > 1) w *= r.w[ky];
                if (dim > 2) w *= r.w[kz];
                q.points.push_back(p);
                q.weights.push_back(w);
            }
    return q;
}

ShapeValues q1_shapes(const Vec3& ref, int dim) {
    if (dim < 1 || dim > 3)
        throw InvalidArgument("q1_shapes: dim must be 1, 2 or 3");
    ShapeValues s;
    s.count = 1 << dim;
    for (int c = 0; c < s.count; ++c) {
        double v = 1.0;
        Vec3 g{};
        // factor per axis: (1 -+ t)/2, derivative -+1/2
        double f[3], df[3];
        for (int d = 0; d < dim; ++d) {
            const int bit = (c >> d) & 1;
            f[d] = bit ? 0.5 * (1.0 + ref[d]) : 0.5 * (1.0 - ref[d]);
            df[d] = bit ? 0.5 : -0.5;
        }
        for (int d = 0; d < dim; ++d) v *= f[d];
        for (int d = 0; d < dim; ++d) {
            double gd = df[d];
            for (int e = 0; e < dim; ++e)
                if (e != d) gd *= f[e];
            g[d] = gd;
        }
        s.value[c] = v;
        s.grad[c] = g;
    }
    return s;
}

ShapeValues q2_shapes(const Vec3& ref, int dim) {
    if (dim < 1 || dim > 3)
        throw InvalidArgument("q2_shapes: dim must be 1, 2 or 3");
    // 1D quadratic Lagrange factors on {-1, 0, 1}.
    auto L = [](int node, double t) {
        switch (node) {
            case 0: return 0.5 * t * (t - 1.0);
            case 1: return (1.0 - t) * (1.0 + t);
            default: return 0.5 * t * (t + 1.0);
        }
    };
    auto dL = [](int node, double t) {
        switch (node) {
            case 0: return t - 0.5;
            case 1: return -2.0 * t;
            default: return t + 0.5;
        }
    };

    ShapeValues s;
    s.count = 1;
    for (int d = 0; d < dim; ++d) s.count *= 3;
    for (int c = 0; c < s.count; ++c) {
        int idx[3] = {c % 3, (c / 3) % 3, (c / 9) % 3};
        double f[3], df[3];
        for (int d = 0; d < dim; ++d) {
            f[d] = L(idx[d], ref[d]);
            df[d] = dL(idx[d], ref[d]);
        }
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= f[d];
        Vec3 g{};
        for (int d = 0; d < dim; ++d) {
            double gd = df[d];
            for (int e = 0; e < dim; ++e)
                if (e != d) gd *= f[e];
            g[d] = gd;
        }
        s.value[c] = v;
        s.grad[c] = g;
    }
    return s;
}

}  // namespace kgz

/// @file test_assembly.cpp
/// @brief Global operators against closed-form local matrices, row-sum
///        identities, and the dense reference assembly.
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "kgz/assembly.hpp"
#include "kgz/fields.hpp"
#include "kgz/linalg.hpp"
#include "kgz/mesh.hpp"
#include "kgz/quadrature.hpp"
#include "kgz/sparse.hpp"

using kgz::ComplexField;
using kgz::DofSet;
using kgz::RealField;
using kgz::SparseMatrix;
using kgz::TensorMesh;
using kgz::Vec3;

namespace {

TensorMesh unit_square(int m) {
    return TensorMesh(2, {0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {m, m, 1});
}

RealField random_dirichlet_field(const TensorMesh& mesh, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    RealField f(mesh.node_count(), 0.0);
    for (int n = 0; n < mesh.node_count(); ++n)
        if (!mesh.is_boundary(n)) f[n] = unif(rng);
    return f;
}

}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("corner row of the full mass matrix reproduces the local matrix") {
    // On a 2x2 unit-square mesh the corner node 0 belongs to one element,
    // so its full-matrix row is exactly one local mass matrix row. In the
    // corner-bit ordering (0,0),(1,0),(0,1),(1,1) that row is
    // (h^2/36) * [4, 2, 2, 1]; walking the element counterclockwise
    // (0,0),(1,0),(1,1),(0,1) turns it into the familiar [4, 2, 1, 2].
    TensorMesh mesh = unit_square(2);
    const double h = 0.5, c = h * h / 36.0;
    SparseMatrix M = kgz::assemble_mass(mesh, kgz::gauss_rule(3, 2), DofSet::AllNodes);
    CHECK(M.get(0, 0) == doctest::Approx(4 * c).epsilon(1e-13));
    CHECK(M.get(0, 1) == doctest::Approx(2 * c).epsilon(1e-13));  // right neighbor
    CHECK(M.get(0, 3) == doctest::Approx(2 * c).epsilon(1e-13));  // upper neighbor
    CHECK(M.get(0, 4) == doctest::Approx(1 * c).epsilon(1e-13));  // diagonal corner
}

TEST_CASE("corner row of the full stiffness matrix reproduces the local matrix") {
    // 2D Q1 stiffness on squares is h-independent: corner row
    // (1/6) * [4, -1, -1, -2] in corner-bit order.
    TensorMesh mesh = unit_square(2);
    SparseMatrix K =
        kgz::assemble_stiffness(mesh, kgz::gauss_rule(3, 2), DofSet::AllNodes);
    CHECK(K.get(0, 0) == doctest::Approx(4.0 / 6.0).epsilon(1e-13));
    CHECK(K.get(0, 1) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
    CHECK(K.get(0, 3) == doctest::Approx(-1.0 / 6.0).epsilon(1e-13));
    CHECK(K.get(0, 4) == doctest::Approx(-2.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("interior mass diagonal accumulates four local corners") {
    TensorMesh mesh = unit_square(4);
    const double h = 0.25;
    SparseMatrix M = kgz::assemble_mass(mesh, kgz::gauss_rule(3, 2));
    int dof = mesh.interior_of(mesh.node_index({2, 2, 0}));
    CHECK(M.get(dof, dof) == doctest::Approx(4.0 / 9.0 * h * h).epsilon(1e-13));
}

TEST_CASE("row sums: mass rows integrate the hat, stiffness rows vanish") {
    TensorMesh mesh(2, {0.0, 0.0, 0.0}, {2.0, 1.0, 0.0}, {4, 4, 1});
    const double cell = 0.5 * 0.25;
    SparseMatrix M = kgz::assemble_mass(mesh, kgz::gauss_rule(2, 2), DofSet::AllNodes);
    SparseMatrix K =
        kgz::assemble_stiffness(mesh, kgz::gauss_rule(2, 2), DofSet::AllNodes);
    for (int nnode = 0; nnode < mesh.node_count(); ++nnode) {
        double msum = 0.0, ksum = 0.0;
        for (int col = 0; col < mesh.node_count(); ++col) {
            msum += M.get(nnode, col);
            ksum += K.get(nnode, col);
        }
        CHECK(std::abs(ksum) < 1e-13);
        if (!mesh.is_boundary(nnode))
            CHECK(msum == doctest::Approx(cell).epsilon(1e-12));
    }
    // All entries of the mass matrix sum to the domain volume.
    double total = 0.0;
    for (int r = 0; r < mesh.node_count(); ++r)
        for (int col = 0; col < mesh.node_count(); ++col) total += M.get(r, col);
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("assembled matrices match the dense reference, 2d and 3d") {
    std::vector<TensorMesh> meshes;
    meshes.emplace_back(2, Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 1.0, 0.0},
                        std::array<int, 3>{8, 8, 1});
    meshes.emplace_back(2, Vec3{0.0, 0.0, 0.0}, Vec3{2.0, 1.0, 0.0},
                        std::array<int, 3>{4, 4, 1});
    meshes.emplace_back(3, Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 1.0, 1.0},
                        std::array<int, 3>{3, 2, 2});
    for (const TensorMesh& mesh : meshes) {
        const kgz::QuadratureRule rule = kgz::gauss_rule(3, mesh.dim());
        SparseMatrix M = kgz::assemble_mass(mesh, rule, DofSet::AllNodes);
        SparseMatrix K = kgz::assemble_stiffness(mesh, rule, DofSet::AllNodes);
        oracle::Dense Mref = oracle::mass_dense(mesh, 3);
        oracle::Dense Kref = oracle::stiffness_dense(mesh, 3);
        double worst = 0.0;
        for (int r = 0; r < mesh.node_count(); ++r)
            for (int c = 0; c < mesh.node_count(); ++c) {
                worst = std::max(worst, std::abs(M.get(r, c) - Mref[r][c]));
                worst = std::max(worst, std::abs(K.get(r, c) - Kref[r][c]));
            }
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("interior operators are symmetric positive definite") {
    for (int dim : {2, 3}) {
        TensorMesh mesh(dim, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0},
                        {6, 6, dim == 3 ? 4 : 1});
        const kgz::QuadratureRule rule = kgz::gauss_rule(3, dim);
        for (bool stiffness : {false, true}) {
            SparseMatrix A = stiffness ? kgz::assemble_stiffness(mesh, rule)
                                       : kgz::assemble_mass(mesh, rule);
            const int n = A.rows();
            REQUIRE(n == mesh.interior_count());
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < r; ++c)
                    CHECK(std::abs(A.get(r, c) - A.get(c, r)) < 1e-14);
            // Positive definiteness: Cholesky must run to completion.
            std::vector<double> b(n, 1.0);
            CHECK_NOTHROW(kgz::dense_solve(A.to_dense(), b));
        }
    }
}

TEST_CASE("load vector of a constant integrates the hats") {
    TensorMesh mesh(2, {0.0, 0.0, 0.0}, {2.0, 1.0, 0.0}, {8, 4, 1});
    const double cell = 0.25 * 0.25;
    std::vector<double> zero =
        kgz::load_vector(mesh, kgz::gauss_rule(3, 2), [](const Vec3&) { return 0.0; });
    for (double v : zero) CHECK(v == 0.0);
    std::vector<double> one =
        kgz::load_vector(mesh, kgz::gauss_rule(3, 2), [](const Vec3&) { return 1.0; });
    REQUIRE(static_cast<int>(one.size()) == mesh.interior_count());
    for (double v : one) CHECK(v == doctest::Approx(cell).epsilon(1e-12));
}

TEST_CASE("load vector matches the dense reference on a smooth source") {
    TensorMesh mesh = unit_square(6);
    auto f = [](const Vec3& x) { return std::sin(M_PI * x[0]) * std::cos(x[1]); };
    std::vector<double> got = kgz::load_vector(mesh, kgz::gauss_rule(3, 2), f);
    std::vector<double> ref = oracle::load(mesh, 3, f);
    for (size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-14);
}

TEST_CASE("gradient load vector realizes the stiffness action on bilinears") {
    // q(x,y) = 1 + 2x - y + 3xy lies in the Q1 space, so (grad q, grad l_j)
    // must equal row j of the full stiffness matrix applied to its nodal
    // values.
    TensorMesh mesh(2, {0.0, 0.0, 0.0}, {1.0, 2.0, 0.0}, {5, 4, 1});
    auto q = [](const Vec3& x) { return 1.0 + 2.0 * x[0] - x[1] + 3.0 * x[0] * x[1]; };
    auto grad_q = [](const Vec3& x) {
        return Vec3{2.0 + 3.0 * x[1], -1.0 + 3.0 * x[0], 0.0};
    };
    std::vector<double> rhs =
        kgz::gradient_load_vector(mesh, kgz::gauss_rule(5, 2), grad_q);
    SparseMatrix K =
        kgz::assemble_stiffness(mesh, kgz::gauss_rule(3, 2), DofSet::AllNodes);
    RealField qn(mesh.node_count());
    for (int n = 0; n < mesh.node_count(); ++n) qn[n] = q(mesh.node_position(n));
    std::vector<double> Kq(mesh.node_count());
    K.multiply(qn, Kq);
    for (int i = 0; i < mesh.interior_count(); ++i)
        CHECK(std::abs(rhs[i] - Kq[mesh.node_of_interior(i)]) < 1e-12);
}

TEST_CASE("nonlinear vectors: zero field and constant field baselines") {
    TensorMesh mesh = unit_square(4);
    const kgz::QuadratureRule rule = kgz::gauss_rule(3, 2);
    ComplexField zero = kgz::zero_complex_field(mesh);
    RealField phibar = kgz::zero_field(mesh);
    kgz::ComplexVec F = kgz::nonlinear_u_vector(mesh, rule, zero, zero, phibar);
    for (int i = 0; i < mesh.interior_count(); ++i) {
        CHECK(F.re[i] == 0.0);
        CHECK(F.im[i] == 0.0);
    }

    // u_new = u_old = 1 (as raw coefficients) and phibar = 0 turn the
    // integrand into (1 * 1, l_j) = cell volume.
    ComplexField ones{RealField(mesh.node_count(), 1.0),
                      RealField(mesh.node_count(), 0.0)};
    F = kgz::nonlinear_u_vector(mesh, rule, ones, ones, phibar);
    std::vector<double> S = kgz::nonlinear_sq_vector(mesh, rule, ones, ones);
    const double cell = 0.25 * 0.25;
    for (int i = 0; i < mesh.interior_count(); ++i) {
        CHECK(F.re[i] == doctest::Approx(cell).epsilon(1e-12));
        CHECK(std::abs(F.im[i]) < 1e-15);
        CHECK(S[i] == doctest::Approx(cell).epsilon(1e-12));
    }
}

TEST_CASE("nonlinear vectors match the dense reference on random fields") {
    std::vector<TensorMesh> meshes;
    meshes.emplace_back(2, Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 1.0, 0.0},
                        std::array<int, 3>{6, 6, 1});
    meshes.emplace_back(3, Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 1.0, 1.0},
                        std::array<int, 3>{3, 3, 3});
    unsigned seed = 1000;
    for (const TensorMesh& mesh : meshes) {
        const kgz::QuadratureRule rule = kgz::gauss_rule(3, mesh.dim());
        for (int trial = 0; trial < 3; ++trial) {
            ComplexField un{random_dirichlet_field(mesh, seed++),
                            random_dirichlet_field(mesh, seed++)};
            ComplexField uo{random_dirichlet_field(mesh, seed++),
                            random_dirichlet_field(mesh, seed++)};
            RealField phibar = random_dirichlet_field(mesh, seed++);
            kgz::ComplexVec F = kgz::nonlinear_u_vector(mesh, rule, un, uo, phibar);
            std::vector<double> S = kgz::nonlinear_sq_vector(mesh, rule, un, uo);
            std::vector<double> Fre, Fim;
            oracle::nonlinear_u(mesh, 3, un, uo, phibar, Fre, Fim);
            std::vector<double> Sref = oracle::nonlinear_sq(mesh, 3, un, uo);
            for (int i = 0; i < mesh.interior_count(); ++i) {
                CHECK(std::abs(F.re[i] - Fre[i]) < 1e-13);
                CHECK(std::abs(F.im[i] - Fim[i]) < 1e-13);
                CHECK(std::abs(S[i] - Sref[i]) < 1e-13);
            }
        }
    }
}

TEST_CASE("scheme integrands are integrated exactly by the 3-point rule") {
    // The heaviest integrand in the step couples two squared factors with
    // a test function: degree 4 per axis. A 3-point rule (exact through
    // degree 5) must therefore agree with a 5-point rule to rounding.
    TensorMesh mesh = unit_square(4);
    ComplexField un{random_dirichlet_field(mesh, 7u), random_dirichlet_field(mesh, 8u)};
    ComplexField uo{random_dirichlet_field(mesh, 9u),
                    random_dirichlet_field(mesh, 10u)};
    RealField phibar = random_dirichlet_field(mesh, 11u);
    kgz::ComplexVec F3 =
        kgz::nonlinear_u_vector(mesh, kgz::gauss_rule(3, 2), un, uo, phibar);
    kgz::ComplexVec F5 =
        kgz::nonlinear_u_vector(mesh, kgz::gauss_rule(5, 2), un, uo, phibar);
    for (int i = 0; i < mesh.interior_count(); ++i) {
        CHECK(std::abs(F3.re[i] - F5.re[i]) < 1e-14);
        CHECK(std::abs(F3.im[i] - F5.im[i]) < 1e-14);
    }
    // A 2-point rule (exact only through degree 3) genuinely differs.
    kgz::ComplexVec F2 =
        kgz::nonlinear_u_vector(mesh, kgz::gauss_rule(2, 2), un, uo, phibar);
    double gap = 0.0;
    for (int i = 0; i < mesh.interior_count(); ++i)
        gap = std::max(gap, std::abs(F2.re[i] - F3.re[i]));
    CHECK(gap > 1e-8);
}

}  // TEST_SUITE

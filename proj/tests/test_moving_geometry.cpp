#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace splitdg;
using namespace splitdg::testing;

TEST(Motion, StandingWave) {
    const auto m = standing_wave(2.0);
    const Vec3 x0{0.3, -0.45, 0.8};
    const auto [x, v] = evaluate_motion(m, x0, 0.0);
    for (int d = 0; d < 3; ++d) EXPECT_DOUBLE_EQ(x[d], x0[d]);
    const auto [x1, v1] = evaluate_motion(m, x0, 0.25);
    const double s = std::sin(std::numbers::pi * x0[0]) * std::sin(std::numbers::pi * x0[1]) *
                     std::sin(std::numbers::pi * x0[2]);
    for (int d = 0; d < 3; ++d) {
        EXPECT_NEAR(x1[d] - x0[d], 0.1 * s, 1e-15);
        EXPECT_NEAR(v1[d], 0.0, 1e-15);
    }
    const auto [xs, vs] = evaluate_motion(static_box(2.0), x0, 0.7);
    for (int d = 0; d < 3; ++d) {
        EXPECT_EQ(xs[d], x0[d]);
        EXPECT_EQ(vs[d], 0.0);
    }
}

TEST(Motion, BlendWeight) {
    EXPECT_EQ(blend_weight(0.25, 0.25, 0.75), 1.0);
    EXPECT_EQ(blend_weight(0.75, 0.25, 0.75), 0.0);
    EXPECT_DOUBLE_EQ(blend_weight(0.5, 0.25, 0.75), 0.5);
    EXPECT_THROW(blend_weight(0.5, 1.0, 0.5), std::invalid_argument);
}

TEST(Metrics, AffineElement) {
    const auto ops = build_operators(build_nodeset(3));
    MovingMesh mesh(ops, cube(2), static_box(2.0), {0, 0, 0}, 2);
    const auto g = mesh.build(0.0);
    for (std::size_t n = 0; n < g.x.size(); ++n) {
        EXPECT_NEAR(g.jac[n], 0.125, 1e-14);
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < 3; ++c) EXPECT_NEAR(g.ja[n][i][c], i == c ? 0.25 : 0.0, 1e-14);
    }
    const auto f = face_normals(g, 0, MeshTopology::face_id(0, 1));
    for (std::size_t k = 0; k < f.n.size(); ++k) {
        EXPECT_NEAR(f.n[k][0], 1.0, 1e-14);
        EXPECT_NEAR(f.s[k], 0.25, 1e-14);
    }
    for (double v : contravariant_normal_velocity(g, 3, 4)) EXPECT_EQ(v, 0.0);
}

TEST(Metrics, DiscreteMetricIdentitiesOnDeformedMesh) {
    const auto ops = build_operators(build_nodeset(3));
    MovingMesh mesh(ops, cube(3), standing_wave(2.0, 0.08), {-1, -1, -1}, 2);
    const auto g = mesh.build(0.25);
    const int np = g.nodes_per_element();
    std::vector<double> in(np), out(np);
    double worst = 0.0;
    for (long e = 0; e < g.num_elements; ++e) {
        for (int c = 0; c < 3; ++c) {
            std::vector<double> div(np, 0.0);
            for (int i = 0; i < 3; ++i) {
                for (int p = 0; p < np; ++p) in[p] = g.ja[e * np + p][i][c];
                apply_along(ops.deriv, i, in.data(), out.data());
                for (int p = 0; p < np; ++p) div[p] += out[p];
            }
            for (double v : div) worst = std::max(worst, std::abs(v));
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Metrics, FaceNormalsAreUnit) {
    const auto ops = build_operators(build_nodeset(4));
    MovingMesh mesh(ops, cube(2), standing_wave(2.0), {-1, -1, -1}, 2);
    const auto g = mesh.build(0.3);
    for (long e = 0; e < g.num_elements; ++e)
        for (int f = 0; f < 6; ++f)
            for (const auto& n : face_normals(g, e, f).n) EXPECT_NEAR(norm(n), 1.0, 1e-14);
}

TEST(Metrics, NormalVelocity) {
    const auto ops = build_operators(build_nodeset(3));
    MeshMotion m;
    m.kind = MotionKind::BlendedRigid;
    m.r1 = 100.0;
    m.r2 = 200.0;
    m.length = {2, 2, 2};
    m.h_amp = {1.0 / (2 * std::numbers::pi), 0, 0};
    MovingMesh rigid(ops, cube(1), m, {0, 0, 0}, 3);
    const auto g = rigid.build(0.0);  // nu = (1, 0, 0)
    for (double v : contravariant_normal_velocity(g, 0, 1)) EXPECT_NEAR(v, 1.0, 1e-14);

    MovingMesh wave(ops, cube(2), standing_wave(2.0), {-1, -1, -1}, 2);
    const auto w = wave.build(0.25 + 0.1);
    for (long e = 0; e < w.num_elements; ++e) {
        for (int f = 0; f < 6; ++f) {
            const auto fn = face_normals(w, e, f);
            const auto vn = contravariant_normal_velocity(w, e, f);
            const auto nodes = face_nodes(3, f);
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                const double ref = fn.s[k] * dot(fn.n[k], w.nu[e * 64 + nodes[k]]);
                EXPECT_NEAR(vn[k], ref, 1e-13);
            }
        }
    }
}

TEST(Mesh, Watertight) {
    const auto ops = build_operators(build_nodeset(3));
    const auto topo = cube(3);
    MovingMesh mesh(ops, topo, standing_wave(2.0), {-1, -1, -1}, 2);
    const auto g = mesh.build(0.2);
    const int np = g.nodes_per_element();
    for (long e = 0; e < g.num_elements; ++e) {
        for (int d = 0; d < 3; ++d) {
            const long nb = topo.neighbor(e, d, 1);
            const bool wrap = topo.element_index(e)[d] == topo.k[d] - 1;
            const auto hi = face_nodes(3, MeshTopology::face_id(d, 1));
            const auto lo = face_nodes(3, MeshTopology::face_id(d, 0));
            for (std::size_t k = 0; k < hi.size(); ++k) {
                const Vec3& a = g.x[e * np + hi[k]];
                const Vec3& b = g.x[nb * np + lo[k]];
                for (int c = 0; c < 3; ++c) {
                    const double shift = (wrap && c == d) ? 2.0 : 0.0;
                    if (shift == 0.0) {
                        EXPECT_EQ(a[c], b[c]);
                    } else {
                        EXPECT_NEAR(a[c], b[c] + shift, 1e-14);
                    }
                }
                for (int c = 0; c < 3; ++c) {
                    EXPECT_NEAR(g.ja[e * np + hi[k]][d][c], g.ja[nb * np + lo[k]][d][c], 1e-14);
                    EXPECT_EQ(g.nu[e * np + hi[k]][c], g.nu[nb * np + lo[k]][c]);
                }
            }
        }
    }
}

TEST(Mesh, TopologyNeighbors) {
    const auto t = cube(4);
    const long e = t.element_id({3, 0, 2});
    EXPECT_EQ(t.element_index(t.neighbor(e, 0, 1))[0], 0);
    EXPECT_EQ(t.element_index(t.neighbor(e, 1, 0))[1], 3);
    EXPECT_EQ(MeshTopology::opposite_face(MeshTopology::face_id(2, 1)), MeshTopology::face_id(2, 0));
}

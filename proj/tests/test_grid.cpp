#include <gtest/gtest.h>

#include "safebo/grid.hpp"

using namespace safebo;

TEST(Grid, ThreeByThreeSpacing) {
    const GridDomain g = build_grid({{0.0, 1.0}, {0.0, 1.0}}, {3, 3});
    EXPECT_EQ(g.s_values(), (std::vector<double>{0.0, 0.5, 1.0}));
    ASSERT_EQ(g.n_x(), 3u);
    EXPECT_EQ(g.x_point(0)(0), 0.0);
    EXPECT_EQ(g.x_point(1)(0), 0.5);
    EXPECT_EQ(g.x_point(2)(0), 1.0);
}

TEST(Grid, ClinicalBoxSpacing) {
    const GridDomain g = build_grid({{0.0, 1.0}, {0.0, 2.0}}, {200, 200});
    EXPECT_EQ(g.n_s(), 200u);
    EXPECT_EQ(g.n_x(), 200u);
    EXPECT_NEAR(g.x_point(1)(0) - g.x_point(0)(0), 2.0 / 199.0, 1e-15);
    EXPECT_EQ(g.x_point(199)(0), 2.0);
}

TEST(Grid, TwoPointsAreCorners) {
    const GridDomain g = build_grid({{0.0, 1.0}, {-3.0, 5.0}}, {2, 2});
    EXPECT_EQ(g.s_values(), (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(g.x_point(0)(0), -3.0);
    EXPECT_EQ(g.x_point(1)(0), 5.0);
}

TEST(Grid, FlatIndexRoundTrip) {
    const GridDomain g = build_grid({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, {4, 3, 5});
    EXPECT_EQ(g.n_x(), 15u);
    EXPECT_EQ(g.size(), 60u);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(g.flat(g.unflat(k)), k);
    EXPECT_EQ(g.flat(1, 2), 2u * 4u + 1u);
}

TEST(Grid, FirstXDimensionVariesSlowest) {
    const GridDomain g = build_grid({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, {2, 3, 2});
    EXPECT_EQ(g.x_subindices(0), (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(g.x_subindices(1), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(g.x_subindices(2), (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(g.x_point(5)(0), 1.0);
    EXPECT_EQ(g.x_point(5)(1), 1.0);
}

TEST(Grid, UnitCoordinatesNormalizeTheBox) {
    const GridDomain g = build_grid({{0.0, 1.0}, {0.0, 2.0}}, {3, 5});
    const Point u = g.unit_point(1, 4);
    EXPECT_EQ(u(0), 0.5);
    EXPECT_EQ(u(1), 1.0);
    EXPECT_EQ(g.unit_points().rows(), static_cast<Eigen::Index>(g.size()));
}

TEST(Grid, InvalidBoxesAreConfigErrors) {
    EXPECT_THROW(build_grid({{0.0, 2.0}, {0.0, 1.0}}, {3, 3}), ConfigError);
    EXPECT_THROW(build_grid({{0.0, 1.0}, {1.0, 1.0}}, {3, 3}), ConfigError);
    EXPECT_THROW(build_grid({{0.0, 1.0}, {0.0, 1.0}}, {1, 3}), ConfigError);
    EXPECT_THROW(build_grid({{0.0, 1.0}}, {3}), ConfigError);
    EXPECT_THROW(build_grid({{0.0, 1.0}, {0.0, 1.0}}, {3}), ConfigError);
}

#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"
#include "l3f/lf/views.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

using namespace l3f;
using lf::LightField;

namespace {

std::string encode(const LightField& field) {
    std::ostringstream os(std::ios::binary);
    lf::write_lf4(os, field);
    return os.str();
}

LightField decode(const std::string& bytes) {
    std::istringstream is(bytes, std::ios::binary);
    return lf::read_lf4(is);
}

DecodeError::Kind decode_kind(const std::string& bytes) {
    try {
        decode(bytes);
    } catch (const DecodeError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no decode error";
    return DecodeError::Kind::bad_magic;
}

void put_u16(std::string& bytes, std::size_t offset, std::uint16_t v) {
    bytes[offset] = static_cast<char>(v & 0xff);
    bytes[offset + 1] = static_cast<char>(v >> 8);
}

} // namespace

TEST(LightField, LayoutIsPlanarPerView) {
    LightField f(2, 3, 4, 5);
    EXPECT_EQ(f.data().size(), 2u * 3 * 3 * 4 * 5);
    f.at(1, 2, 1, 3, 4) = 0.5f;
    EXPECT_EQ(f.data()[(((1 * 3 + 2) * 3 + 1) * 4 + 3) * 5 + 4], 0.5f);
    EXPECT_EQ(f.view(1, 2).size(), f.view_size());
    EXPECT_EQ(f.view(1, 2)[(1 * 4 + 3) * 5 + 4], 0.5f);
    EXPECT_THROW(f.view(2, 0), PreconditionError);
    EXPECT_THROW(LightField(0, 1, 1, 1), PreconditionError);
}

TEST(LightField, ClampUnitRejectsNonFinite) {
    LightField f(1, 1, 1, 2);
    f.data()[0] = -0.5f;
    f.data()[1] = 3.0f;
    f.clamp_unit();
    EXPECT_EQ(f.data()[0], 0.0f);
    EXPECT_EQ(f.data()[1], 1.0f);
    f.data()[2] = std::nanf("");
    EXPECT_THROW(f.clamp_unit(), IoError);
}

TEST(Lf4, ZerosRoundTrip) {
    const LightField zeros(2, 2, 4, 4);
    EXPECT_EQ(decode(encode(zeros)), zeros);
}

TEST(Lf4, RandomRoundTripIsBitIdentical) {
    const auto f = test::random_lf(8, 8, 32, 32, 7);
    test::TempDir dir("lf4");
    lf::save_lf4(dir / "a.lf4", f);
    const auto back = lf::load_lf4(dir / "a.lf4");
    ASSERT_EQ(back.data().size(), f.data().size());
    EXPECT_EQ(std::memcmp(back.data().data(), f.data().data(), f.data().size() * sizeof(float)), 0);
    EXPECT_EQ(std::filesystem::file_size(dir / "a.lf4"), 18 + f.data().size() * 4);
}

TEST(Lf4, HeaderFieldsAreLittleEndian) {
    const std::string bytes = encode(LightField(3, 2, 258, 5));
    EXPECT_EQ(bytes.substr(0, 4), std::string("LF4\0", 4));
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[6], 3);
    EXPECT_EQ(bytes[8], 2);
    EXPECT_EQ(static_cast<unsigned char>(bytes[10]), 2);
    EXPECT_EQ(static_cast<unsigned char>(bytes[11]), 1);
    EXPECT_EQ(bytes[14], 3);
    EXPECT_EQ(bytes[16], 0);
}

TEST(Lf4, DistinctDecodeErrors) {
    const std::string good = encode(test::random_lf(2, 2, 3, 3, 1));
    std::string bad = good;
    bad.replace(0, 4, "XXXX");
    EXPECT_EQ(decode_kind(bad), DecodeError::Kind::bad_magic);
    try {
        decode(bad);
    } catch (const DecodeError& e) {
        EXPECT_NE(std::string(e.what()).find("bad magic"), std::string::npos);
    }
    EXPECT_EQ(decode_kind(good.substr(0, good.size() - 1)), DecodeError::Kind::truncated_payload);
    EXPECT_EQ(decode_kind(good.substr(0, 10)), DecodeError::Kind::truncated_payload);
    bad = good;
    put_u16(bad, 14, 4);
    EXPECT_EQ(decode_kind(bad), DecodeError::Kind::dimension_overflow);
    bad = good;
    for (std::size_t off : {6u, 8u, 10u, 12u}) put_u16(bad, off, 65535);
    EXPECT_EQ(decode_kind(bad), DecodeError::Kind::dimension_overflow);
    bad = good;
    put_u16(bad, 6, 0);
    EXPECT_EQ(decode_kind(bad), DecodeError::Kind::dimension_overflow);
    bad = good;
    bad[4] = 2;
    EXPECT_EQ(decode_kind(bad), DecodeError::Kind::unsupported_version);
    bad = good;
    bad[16] = 1;
    EXPECT_EQ(decode_kind(bad), DecodeError::Kind::unsupported_dtype);
}

TEST(Lf4, LoaderClampsToUnitRange) {
    LightField f(1, 1, 1, 2);
    std::string bytes = encode(f);
    const float hot = 1.75f, cold = -0.25f;
    std::memcpy(bytes.data() + 18, &hot, 4);
    std::memcpy(bytes.data() + 22, &cold, 4);
    const auto back = decode(bytes);
    EXPECT_EQ(back.data()[0], 1.0f);
    EXPECT_EQ(back.data()[1], 0.0f);
}

TEST(Png, ViewDirectoryRoundTripsAt8Bits) {
    auto f = test::random_lf(2, 3, 5, 7, 3);
    for (float& x : f.data()) x = std::round(x * 255.0f) / 255.0f;
    test::TempDir dir("png");
    lf::save_view_directory(dir.path(), f);
    EXPECT_TRUE(std::filesystem::exists(dir / "view_01_02.png"));
    EXPECT_EQ(lf::view_file_name(3, 11), "view_03_11.png");
    const auto back = lf::load_view_directory(dir.path());
    ASSERT_EQ(back.views_u(), 2);
    ASSERT_EQ(back.views_v(), 3);
    for (std::size_t i = 0; i < f.data().size(); ++i) EXPECT_NEAR(back.data()[i], f.data()[i], 1e-6);
    std::filesystem::remove(dir / "view_00_01.png");
    EXPECT_THROW(lf::load_view_directory(dir.path()), IoError);
}

TEST(StackViews, PaperGridShape) {
    const LightField f(8, 8, 180, 180);
    EXPECT_EQ(lf::stack_views<float>(f).shape(), (nn::Shape{180, 180, 192}));
}

TEST(StackViews, SingleViewIsThatView) {
    const auto f = test::random_lf(1, 1, 4, 6, 2);
    EXPECT_EQ(lf::stack_views<float>(f), lf::view_tensor<float>(f, 0, 0));
}

TEST(StackViews, ChannelSlicesMatchPerViewLookup) {
    const auto f = test::random_lf(2, 2, 4, 4, 4);
    const auto t = lf::stack_views<double>(f);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            for (int c = 0; c < 3; ++c)
                for (int y = 0; y < 4; ++y)
                    for (int x = 0; x < 4; ++x)
                        ASSERT_EQ(t.at(y, x, (u * 2 + v) * 3 + c), static_cast<double>(f.at(u, v, c, y, x)));
}

TEST(StackViews, UnstackingReproducesEveryView) {
    const auto f = test::random_lf(3, 2, 5, 3, 5);
    const auto t = lf::stack_views<float>(f);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 2; ++v) {
            nn::Tensor<float> slice({5, 3, 3});
            for (int y = 0; y < 5; ++y)
                for (int x = 0; x < 3; ++x)
                    for (int c = 0; c < 3; ++c) slice.at(y, x, c) = t.at(y, x, (u * 2 + v) * 3 + c);
            EXPECT_EQ(lf::tensor_to_image(slice), f.view_image(u, v));
        }
}

TEST(NeighborStack, InteriorViewUsesFourAdjacentViews) {
    // 8x8 working grid inside a 10x10 stored grid.
    LightField f(10, 10, 2, 2);
    for (int u = 0; u < 10; ++u)
        for (int v = 0; v < 10; ++v)
            for (float& x : f.view(u, v)) x = static_cast<float>(u * 10 + v) / 100.0f;
    const auto t = lf::neighbor_stack<float>(f, {3, 3});
    ASSERT_EQ(t.shape(), (nn::Shape{2, 2, 15}));
    const std::pair<int, int> expect[5] = {{3, 3}, {3, 2}, {2, 3}, {3, 4}, {4, 3}};
    for (int k = 0; k < 5; ++k) {
        const float want = static_cast<float>((expect[k].first + 1) * 10 + expect[k].second + 1) / 100.0f;
        for (int c = 0; c < 3; ++c) EXPECT_EQ(t.at(1, 0, 3 * k + c), want) << "slot " << k;
    }
}

TEST(NeighborStack, ConstantFieldGivesConstantChannels) {
    const LightField f(4, 4, 3, 3, 0.25f);
    const auto t = lf::neighbor_stack<float>(f, {1, 0});
    for (float x : t.data()) EXPECT_EQ(x, 0.25f);
}

TEST(NeighborStack, CornerDrawsFromRingPerIndexOracle) {
    const auto f = test::random_lf(5, 5, 3, 4, 9);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) {
            const auto t = lf::neighbor_stack<float>(f, {u, v});
            const int du[5] = {0, 0, -1, 0, 1}, dv[5] = {0, -1, 0, 1, 0};
            for (int k = 0; k < 5; ++k)
                for (int c = 0; c < 3; ++c)
                    for (int y = 0; y < 3; ++y)
                        for (int x = 0; x < 4; ++x)
                            ASSERT_EQ(t.at(y, x, 3 * k + c), f.at(u + 1 + du[k], v + 1 + dv[k], c, y, x));
        }
}

TEST(NeighborStack, FirstThreeChannelsAreTheView) {
    const auto f = test::random_lf(4, 5, 3, 3, 10);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 3; ++v) {
            const auto t = lf::neighbor_stack<float>(f, {u, v});
            for (int y = 0; y < 3; ++y)
                for (int x = 0; x < 3; ++x)
                    for (int c = 0; c < 3; ++c) ASSERT_EQ(t.at(y, x, c), f.at(u + 1, v + 1, c, y, x));
        }
}

TEST(NeighborStack, MissingRingThrows) {
    const auto f = test::random_lf(3, 3, 2, 2, 1);
    EXPECT_NO_THROW(lf::neighbor_stack<float>(f, {1, 1}, 0));
    EXPECT_THROW(lf::neighbor_stack<float>(f, {0, 0}, 0), PreconditionError);
    EXPECT_THROW(lf::neighbor_stack<float>(f, {1, 1}, 1), PreconditionError);
}

TEST(CropCentralGrid, FifteenToTen) {
    const auto f = test::random_lf(15, 15, 2, 3, 11);
    const auto c = lf::crop_central_grid(f, 8);
    EXPECT_EQ(c.views_u(), 10);
    EXPECT_EQ(c.views_v(), 10);
    EXPECT_EQ(c.view_image(0, 0), f.view_image(3, 3));
    EXPECT_EQ(c.view_image(1, 1), f.view_image(4, 4));
    EXPECT_EQ(c.view_image(9, 9), f.view_image(12, 12));
}

TEST(CropCentralGrid, BoundaryCaseKeepsEverythingButTheRingAsWorkingGrid) {
    for (int u : {3, 5, 6}) {
        const auto f = test::random_lf(u, u, 2, 2, u);
        const auto c = lf::crop_central_grid(f, u - 2);
        EXPECT_EQ(c, f);
        EXPECT_EQ(lf::strip_ring(c), lf::select_views(f, 1, 1, u - 2, u - 2));
    }
}

TEST(CropCentralGrid, MatchesSlicingOracle) {
    const auto f = test::random_lf(11, 9, 3, 2, 12);
    const auto c = lf::crop_central_grid(f, 5);
    const int ou = (11 - 5 + 1) / 2 - 1, ov = (9 - 5 + 1) / 2 - 1;
    for (int u = 0; u < 7; ++u)
        for (int v = 0; v < 7; ++v)
            for (int ch = 0; ch < 3; ++ch)
                for (int y = 0; y < 3; ++y)
                    for (int x = 0; x < 2; ++x) ASSERT_EQ(c.at(u, v, ch, y, x), f.at(u + ou, v + ov, ch, y, x));
}

TEST(CropCentralGrid, TooSmallThrows) {
    EXPECT_THROW(lf::crop_central_grid(LightField(9, 10, 1, 1), 8), PreconditionError);
}

TEST(Epi, ConstantFieldGivesConstantEpi) {
    const LightField f(3, 4, 5, 6, 0.4f);
    const auto e = lf::extract_epi(f, lf::EpiOrientation::horizontal, 1, 2);
    EXPECT_EQ(e.image.height, 4);
    EXPECT_EQ(e.image.width, 6);
    for (float x : e.image.data) EXPECT_EQ(x, 0.4f);
    const auto ev = lf::extract_epi(f, lf::EpiOrientation::vertical, 1, 2);
    EXPECT_EQ(ev.image.height, 3);
    EXPECT_EQ(ev.image.width, 5);
}

TEST(Epi, SingleViewHorizontalIsOneRow) {
    const auto f = test::random_lf(1, 1, 4, 7, 13);
    const auto e = lf::extract_epi(f, lf::EpiOrientation::horizontal, 0, 2);
    ASSERT_EQ(e.image.height, 1);
    for (int c = 0; c < 3; ++c)
        for (int x = 0; x < 7; ++x) EXPECT_EQ(e.image.at(c, 0, x), f.at(0, 0, c, 2, x));
}

TEST(Epi, ZeroDisparityRowsAreEqual) {
    const auto base = test::random_lf(1, 1, 6, 8, 14);
    LightField f(3, 5, 6, 8);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 5; ++v) f.set_view(u, v, base.view_image(0, 0));
    const auto e = lf::extract_epi(f, lf::EpiOrientation::horizontal, 2, 3);
    for (int r = 1; r < 5; ++r)
        for (int c = 0; c < 3; ++c)
            for (int x = 0; x < 8; ++x) EXPECT_EQ(e.image.at(c, r, x), e.image.at(c, 0, x));
}

TEST(Epi, OnePixelShiftGivesSlopeOne) {
    const int W = 64, V = 7;
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<float> d(0, 1);
    std::vector<float> texture(W + V);
    for (float& t : texture) t = d(rng);
    LightField f(1, V, 2, W);
    for (int v = 0; v < V; ++v)
        for (int c = 0; c < 3; ++c)
            for (int y = 0; y < 2; ++y)
                for (int x = 0; x < W; ++x) f.at(0, v, c, y, x) = texture[x + V - v];
    const auto e = lf::extract_epi(f, lf::EpiOrientation::horizontal, 0, 1);
    for (int r = 0; r + 1 < V; ++r) {
        int best = 0;
        double best_score = -1e300;
        for (int s = -3; s <= 3; ++s) {
            double score = 0;
            for (int x = 4; x < W - 4; ++x) score += e.image.at(0, r, x) * e.image.at(0, r + 1, x + s);
            if (score > best_score) best_score = score, best = s;
        }
        EXPECT_EQ(best, 1) << "row " << r;
    }
}

TEST(Epi, VerticalRowsAreImageColumns) {
    const auto f = test::random_lf(4, 3, 5, 6, 16);
    const auto e = lf::extract_epi(f, lf::EpiOrientation::vertical, 2, 4);
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 3; ++c)
            for (int y = 0; y < 5; ++y) EXPECT_EQ(e.image.at(c, i, y), f.at(i, 2, c, y, 4));
    EXPECT_THROW(lf::extract_epi(f, lf::EpiOrientation::vertical, 3, 0), PreconditionError);
    EXPECT_THROW(lf::extract_epi(f, lf::EpiOrientation::horizontal, 0, 5), PreconditionError);
}

TEST(SamplePatch, FullSizeIsForcedToOrigin) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(lf::sample_patch(64, 64, 64, rng), (lf::PatchWindow{0, 0, 64}));
}

TEST(SamplePatch, PaperResolutionRange) {
    std::mt19937_64 rng(2);
    int max_y = 0, max_x = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto w = lf::sample_patch(434, 625, 180, rng);
        ASSERT_GE(w.y, 0);
        ASSERT_GE(w.x, 0);
        ASSERT_LE(w.y, 254);
        ASSERT_LE(w.x, 445);
        max_y = std::max(max_y, w.y);
        max_x = std::max(max_x, w.x);
    }
    EXPECT_EQ(max_y, 254);
    EXPECT_EQ(max_x, 445);
}

TEST(SamplePatch, UniformByChiSquare) {
    std::mt19937_64 rng(3);
    const int n = 10000, cells = 33;
    std::vector<int> ys(cells), xs(cells);
    for (int i = 0; i < n; ++i) {
        const auto w = lf::sample_patch(64, 64, 32, rng);
        ++ys[w.y];
        ++xs[w.x];
    }
    const double expect = static_cast<double>(n) / cells;
    double chi_y = 0, chi_x = 0;
    for (int k = 0; k < cells; ++k) {
        chi_y += (ys[k] - expect) * (ys[k] - expect) / expect;
        chi_x += (xs[k] - expect) * (xs[k] - expect) / expect;
    }
    EXPECT_LT(chi_y, test::chi2_critical_99(32));
    EXPECT_LT(chi_x, test::chi2_critical_99(32));
}

TEST(SamplePatch, InvalidSizesThrow) {
    std::mt19937_64 rng(4);
    EXPECT_THROW(lf::sample_patch(64, 64, 31, rng), PreconditionError);
    EXPECT_THROW(lf::sample_patch(64, 30, 32, rng), PreconditionError);
    EXPECT_THROW(lf::sample_patch(64, 64, 0, rng), PreconditionError);
}

TEST(SamplePatch, WindowNeverCrossesBoundaryAndCropMatches) {
    const auto f = test::random_lf(2, 2, 20, 26, 17);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto w = lf::sample_patch(f, 10, rng);
        ASSERT_LE(w.y + w.size, 20);
        ASSERT_LE(w.x + w.size, 26);
    }
    const lf::PatchWindow w{3, 5, 4};
    const auto c = lf::crop_spatial(f, w);
    EXPECT_EQ(c.at(1, 0, 2, 3, 1), f.at(1, 0, 2, 6, 6));
    EXPECT_THROW(lf::crop_spatial(f, {18, 0, 4}), PreconditionError);
}

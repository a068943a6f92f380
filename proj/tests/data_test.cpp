#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "support/fixtures.hpp"
#include "wrapfs/data.hpp"
#include "wrapfs/error.hpp"

using namespace wrapfs;
using wrapfs::testing::make_dataset;
using wrapfs::testing::wdbc_line;

namespace {

Dataset load_wdbc() { return load_dataset(WRAPFS_DATA_DIR "/wdbc.data"); }

}  // namespace

TEST(ParseWdbc, FullFileHasExpectedClassCounts) {
    const auto ds = load_wdbc();
    EXPECT_EQ(ds.n_samples(), 569u);
    EXPECT_EQ(ds.n_features(), 30u);
    EXPECT_EQ(ds.count(Label::positive), 357u);  // benign
    EXPECT_EQ(ds.count(Label::negative), 212u);  // malignant
    EXPECT_EQ(ds.feature_names().front(), "Radius_Mean");
    EXPECT_EQ(ds.feature_names().back(), "Fractal_dimension_Worst");
    EXPECT_DOUBLE_EQ(ds.features()(0, 0), 17.99);
}

TEST(ParseWdbc, SingleBenignRecord) {
    std::istringstream in(wdbc_line("1", "B", 0.5) + "\n");
    const auto ds = parse_wdbc(in);
    ASSERT_EQ(ds.n_samples(), 1u);
    EXPECT_EQ(ds.labels()[0], Label::positive);
    EXPECT_EQ(ds.n_features(), 30u);
    EXPECT_DOUBLE_EQ(ds.features()(0, 29), 0.5);
}

TEST(ParseWdbc, MalignantIsNegativeAndBlankLinesSkipped) {
    std::istringstream in("\n" + wdbc_line("7", "M") + "\r\n\n" + wdbc_line("8", "B") + "\n");
    const auto ds = parse_wdbc(in);
    ASSERT_EQ(ds.n_samples(), 2u);
    EXPECT_EQ(ds.labels()[0], Label::negative);
    EXPECT_EQ(ds.labels()[1], Label::positive);
}

TEST(ParseWdbc, EmptyInputHasNoRecords) {
    std::istringstream in("");
    try {
        parse_wdbc(in);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("no records"), std::string::npos);
    }
}

TEST(ParseWdbc, ErrorsNameTheLine) {
    auto expect_line = [](const std::string& text, std::size_t line) {
        std::istringstream in(text);
        try {
            parse_wdbc(in);
            FAIL() << "expected ParseError for: " << text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << e.what();
        }
    };
    const auto good = wdbc_line("1", "B");
    expect_line(good + "\n1,B,0.5\n", 2);                                   // field count
    expect_line(good + "\n" + good + "\n" + wdbc_line("3", "X") + "\n", 3);  // diagnosis
    auto bad_number = wdbc_line("4", "M");
    bad_number.replace(bad_number.rfind(','), std::string::npos, ",abc");
    expect_line(bad_number + "\n", 1);
    auto blank_value = wdbc_line("5", "M");
    blank_value.replace(blank_value.rfind(','), std::string::npos, ",");
    expect_line(blank_value + "\n", 1);
}

TEST(LoadDataset, MissingFileIsIoError) { EXPECT_THROW(load_dataset("/nonexistent/wdbc.data"), IoError); }

TEST(LoadDataset, GenericCsvWithLabelColumn) {
    const std::string path = ::testing::TempDir() + "generic.csv";
    {
        std::ofstream out(path);
        out << "a,label,b\n1.5,1,2\n3,0,4\n";
    }
    const auto ds = load_dataset(path);
    ASSERT_EQ(ds.n_samples(), 2u);
    EXPECT_EQ(ds.feature_names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(ds.labels()[0], Label::positive);
    EXPECT_DOUBLE_EQ(ds.features()(1, 1), 4.0);

    std::istringstream bad("a,label\n1,2\n");
    EXPECT_THROW(parse_labeled_csv(bad), ParseError);
}

TEST(Dataset, ShapeInvariantsEnforced) {
    EXPECT_THROW(Dataset(Matrix(2, 1), {Label::positive}, {"a"}), std::invalid_argument);
    EXPECT_THROW(Dataset(Matrix(1, 2), {Label::positive}, {"a"}), std::invalid_argument);
}

TEST(FitScaler, ColumnMinMax) {
    const auto ds = make_dataset({{0, 7}, {5, 7}, {10, 7}}, {1, 0, 1});
    const auto s = fit_scaler(ds);
    EXPECT_EQ(s.mins, (std::vector<double>{0, 7}));
    EXPECT_EQ(s.maxs, (std::vector<double>{10, 7}));

    const auto two = make_dataset({{1, 2}, {3, 4}}, {1, 0});
    const auto s2 = fit_scaler(two);
    EXPECT_EQ(s2.mins, (std::vector<double>{1, 2}));
    EXPECT_EQ(s2.maxs, (std::vector<double>{3, 4}));
}

TEST(Transform, MinMaxConstantAndClipping) {
    const ScalerParams s{{0, 7}, {10, 7}};
    const auto ds = make_dataset({{0, 7}, {10, 7}, {5, 9}, {-3, 1}, {12, 7}}, {1, 0, 1, 0, 1});
    const auto t = transform(ds, s);
    EXPECT_DOUBLE_EQ(t.features()(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(t.features()(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(t.features()(2, 0), 0.5);
    EXPECT_DOUBLE_EQ(t.features()(3, 0), 0.0);  // clipped below
    EXPECT_DOUBLE_EQ(t.features()(4, 0), 1.0);  // clipped above
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(t.features()(i, 1), 0.0);  // constant column
    EXPECT_EQ(t.labels(), ds.labels());

    EXPECT_THROW(transform(ds, ScalerParams{{0}, {1}}), std::invalid_argument);
}

TEST(Transform, TrainingColumnsSpanUnitInterval) {
    const auto ds = load_wdbc();
    const auto t = transform(ds, fit_scaler(ds));
    for (std::size_t j = 0; j < t.n_features(); ++j) {
        double lo = 1.0, hi = 0.0;
        for (std::size_t i = 0; i < t.n_samples(); ++i) {
            lo = std::min(lo, t.features()(i, j));
            hi = std::max(hi, t.features()(i, j));
        }
        EXPECT_EQ(lo, 0.0) << j;
        EXPECT_EQ(hi, 1.0) << j;
    }
}

TEST(StratifiedSplit, WdbcSixtyForty) {
    const auto ds = load_wdbc();
    const auto split = stratified_split(ds, 0.6, 42);
    EXPECT_EQ(split.train.n_samples(), 341u);
    EXPECT_EQ(split.test.n_samples(), 228u);
    // Class proportions within one sample of exact.
    EXPECT_NEAR(static_cast<double>(split.train.count(Label::positive)), 0.6 * 357, 1.0);
    EXPECT_NEAR(static_cast<double>(split.train.count(Label::negative)), 0.6 * 212, 1.0);
}

TEST(StratifiedSplit, SymmetricTenRows) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({static_cast<double>(i)});
        labels.push_back(i < 5);
    }
    const auto ds = make_dataset(rows, labels);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto split = stratified_split(ds, 0.5, seed);
        EXPECT_EQ(split.train.n_samples(), 5u);
        EXPECT_EQ(split.test.n_samples(), 5u);
        EXPECT_GT(split.train.count(Label::positive), 0u);
        EXPECT_GT(split.train.count(Label::negative), 0u);
    }
}

TEST(StratifiedSplit, PartitionAndDeterminism) {
    const auto ds = load_wdbc();
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto a = stratified_split(ds, 0.6, seed);
        const auto b = stratified_split(ds, 0.6, seed);
        EXPECT_EQ(a.train_rows, b.train_rows);
        EXPECT_EQ(a.test_rows, b.test_rows);
        std::set<std::size_t> all(a.train_rows.begin(), a.train_rows.end());
        for (auto r : a.test_rows) EXPECT_TRUE(all.insert(r).second) << "row in both parts: " << r;
        EXPECT_EQ(all.size(), ds.n_samples());
        EXPECT_EQ(a.train, ds.select_rows(a.train_rows));
    }
    EXPECT_NE(stratified_split(ds, 0.6, 1).train_rows, stratified_split(ds, 0.6, 2).train_rows);
}

TEST(StratifiedSplit, Preconditions) {
    const auto one_class = make_dataset({{1}, {2}}, {1, 1});
    EXPECT_THROW(stratified_split(one_class, 0.5, 0), std::invalid_argument);
    const auto ok = make_dataset({{1}, {2}}, {1, 0});
    EXPECT_THROW(stratified_split(ok, 0.0, 0), std::invalid_argument);
    EXPECT_THROW(stratified_split(ok, 1.0, 0), std::invalid_argument);
}

TEST(ApplyMask, ProjectionKeepsOrder) {
    const auto ds = make_dataset({{1, 2, 3}, {4, 5, 6}}, {1, 0});
    EXPECT_EQ(apply_mask(ds, FeatureMask::all(3)), ds);

    const auto first = apply_mask(ds, FeatureMask(std::vector<bool>{true, false, false}));
    ASSERT_EQ(first.n_features(), 1u);
    EXPECT_DOUBLE_EQ(first.features()(1, 0), 4.0);
    EXPECT_EQ(first.labels(), ds.labels());

    const auto outer = apply_mask(ds, FeatureMask(std::vector<bool>{true, false, true}));
    EXPECT_EQ(outer.feature_names(), (std::vector<std::string>{"f0", "f2"}));
    EXPECT_DOUBLE_EQ(outer.features()(0, 1), 3.0);

    EXPECT_THROW(apply_mask(ds, FeatureMask(3)), std::invalid_argument);
    EXPECT_THROW(apply_mask(ds, FeatureMask::all(2)), std::invalid_argument);
}

TEST(ApplyMask, TenOfThirtyWdbcColumns) {
    const auto ds = load_wdbc();
    FeatureMask mask(30);
    for (std::size_t j = 0; j < 30; j += 3) mask.set(j, true);
    const auto projected = apply_mask(ds, mask);
    EXPECT_EQ(projected.n_features(), 10u);
    for (std::size_t k = 0; k < 10; ++k) {
        EXPECT_EQ(projected.feature_names()[k], ds.feature_names()[3 * k]);
        EXPECT_EQ(projected.features()(100, k), ds.features()(100, 3 * k));
    }
}

TEST(FeatureMask, HashDependsOnBitsOnly) {
    FeatureMask a(70), b(70);
    a.set(65, true);
    b.set(65, true);
    EXPECT_EQ(a.hash(), b.hash());
    b.set(3, true);
    EXPECT_NE(a.hash(), b.hash());
    EXPECT_NE(FeatureMask(3).hash(), FeatureMask(4).hash());
    EXPECT_EQ(b.selected(), (std::vector<std::size_t>{3, 65}));
}

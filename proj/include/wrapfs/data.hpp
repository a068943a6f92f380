#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace wrapfs {

/// Binary class label. Benign cases are the positive class.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

inline int to_int(Label l) noexcept { return static_cast<int>(l); }

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    /// Builds from nested rows; every row must have the same length.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Labeled tabular data. Validated on construction and immutable afterwards.
class Dataset {
public:
    Dataset() = default;
    Dataset(Matrix features, std::vector<Label> labels, std::vector<std::string> feature_names);

    const Matrix& features() const noexcept { return features_; }
    const std::vector<Label>& labels() const noexcept { return labels_; }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

    std::size_t n_samples() const noexcept { return labels_.size(); }
    std::size_t n_features() const noexcept { return features_.cols(); }
    std::size_t count(Label l) const;

    /// Rows in the given order (duplicates allowed).
    Dataset select_rows(std::span<const std::size_t> rows) const;

    bool operator==(const Dataset&) const = default;

private:
    Matrix features_;
    std::vector<Label> labels_;
    std::vector<std::string> feature_names_;
};

/// Column selection over a dataset; true = feature selected.
class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
    explicit FeatureMask(const std::vector<bool>& bits);

    static FeatureMask all(std::size_t n) { return FeatureMask(n, true); }

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

    std::size_t count() const;
    bool none() const { return count() == 0; }
    std::vector<std::size_t> selected() const;

    /// Platform-stable hash of the bit pattern.
    std::uint64_t hash() const;

    /// "0101..." rendering, index 0 first.
    std::string to_string() const;

    bool operator==(const FeatureMask&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct ScalerParams {
    std::vector<double> mins;
    std::vector<double> maxs;

    bool operator==(const ScalerParams&) const = default;
};

/// Result of a stratified split; the index vectors refer to rows of the input.
struct SplitResult {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Column names of the 30 WDBC features, in file order.
const std::vector<std::string>& wdbc_feature_names();

/// Parses the UCI wdbc.data format: id, diagnosis (M|B), 30 reals per line.
/// Throws ParseError naming the offending line.
Dataset parse_wdbc(std::istream& in);

/// Parses a CSV with a header row and a "label" column holding 0/1.
Dataset parse_labeled_csv(std::istream& in);

/// Reads a dataset file. A header containing a "label" column selects the
/// generic CSV reader, anything else is read as WDBC. Throws IoError/ParseError.
Dataset load_dataset(const std::string& path);

ScalerParams fit_scaler(const Dataset& train);

/// Min-max scaling with clipping to [0, 1]; constant columns map to 0.
Dataset transform(const Dataset& ds, const ScalerParams& scaler);

/// Per-class seeded split. Each class contributes round(n_c * train_fraction) rows to train.
SplitResult stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed);

/// Keeps the selected columns in original order. Throws on empty mask or width mismatch.
Dataset apply_mask(const Dataset& ds, const FeatureMask& mask);

}  // namespace wrapfs

#include "wrapfs/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wrapfs/error.hpp"
#include "wrapfs/random.hpp"

namespace wrapfs {

namespace {

constexpr std::size_t kWdbcFeatures = 30;

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view field, std::size_t line_no) {
    field = trim(field);
    if (field.empty()) throw ParseError("missing value", line_no);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParseError("unparsable number '" + std::string(field) + "'", line_no);
    }
    return value;
}

bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size does not match shape");
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), cols, std::move(data));
}

Dataset::Dataset(Matrix features, std::vector<Label> labels, std::vector<std::string> feature_names)
    : features_(std::move(features)), labels_(std::move(labels)), feature_names_(std::move(feature_names)) {
    if (features_.rows() != labels_.size()) {
        throw std::invalid_argument("Dataset: feature rows (" + std::to_string(features_.rows()) +
                                    ") != labels (" + std::to_string(labels_.size()) + ")");
    }
    // A 0-row matrix has no shape information; trust the names for the width.
    if (features_.rows() == 0 && features_.cols() == 0 && !feature_names_.empty()) {
        features_ = Matrix(0, feature_names_.size());
    }
    if (feature_names_.size() != features_.cols()) {
        throw std::invalid_argument("Dataset: feature_names length != column count");
    }
}

std::size_t Dataset::count(Label l) const { return static_cast<std::size_t>(std::ranges::count(labels_, l)); }

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    Matrix m(rows.size(), n_features());
    std::vector<Label> labels;
    labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto src = features_.row(rows[i]);
        std::ranges::copy(src, m.row(i).begin());
        labels.push_back(labels_[rows[i]]);
    }
    return Dataset(std::move(m), std::move(labels), feature_names_);
}

FeatureMask::FeatureMask(const std::vector<bool>& bits) : bits_(bits.begin(), bits.end()) {}

std::size_t FeatureMask::count() const {
    return static_cast<std::size_t>(std::ranges::count(bits_, std::uint8_t{1}));
}

std::vector<std::size_t> FeatureMask::selected() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out.push_back(i);
    }
    return out;
}

std::uint64_t FeatureMask::hash() const {
    std::uint64_t h = mix64(bits_.size());
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        word |= static_cast<std::uint64_t>(bits_[i]) << (i % 64);
        if (i % 64 == 63) {
            h = mix64(h ^ word);
            word = 0;
        }
    }
    return mix64(h ^ word);
}

std::string FeatureMask::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

const std::vector<std::string>& wdbc_feature_names() {
    static const std::vector<std::string> names = [] {
        const char* base[] = {"Radius",      "Texture",   "Perimeter",      "Area",     "Smoothness",
                              "Compactness", "Concavity", "Concave_points", "Symmetry", "Fractal_dimension"};
        std::vector<std::string> out;
        for (const char* suffix : {"Mean", "SE", "Worst"}) {
            for (const char* b : base) out.push_back(std::string(b) + "_" + suffix);
        }
        return out;
    }();
    return names;
}

Dataset parse_wdbc(std::istream& in) {
    std::vector<double> values;
    std::vector<Label> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() != kWdbcFeatures + 2) {
            throw ParseError("expected " + std::to_string(kWdbcFeatures + 2) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        const auto diagnosis = trim(fields[1]);
        if (diagnosis == "B") {
            labels.push_back(Label::positive);
        } else if (diagnosis == "M") {
            labels.push_back(Label::negative);
        } else {
            throw ParseError("diagnosis must be M or B, got '" + std::string(diagnosis) + "'", line_no);
        }
        for (std::size_t j = 2; j < fields.size(); ++j) values.push_back(parse_number(fields[j], line_no));
    }
    if (labels.empty()) throw ParseError("no records", 0);
    const auto n = labels.size();
    return Dataset(Matrix(n, kWdbcFeatures, std::move(values)), std::move(labels), wdbc_feature_names());
}

Dataset parse_labeled_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    std::size_t label_col = 0;
    bool have_header = false;
    std::vector<double> values;
    std::vector<Label> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_fields(line);
        if (!have_header) {
            bool found = false;
            for (std::size_t j = 0; j < fields.size(); ++j) {
                const auto name = trim(fields[j]);
                if (name == "label" && !found) {
                    label_col = j;
                    found = true;
                } else {
                    names.emplace_back(name);
                }
            }
            if (!found) throw ParseError("header has no 'label' column", line_no);
            have_header = true;
            continue;
        }
        if (fields.size() != names.size() + 1) {
            throw ParseError("expected " + std::to_string(names.size() + 1) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == label_col) {
                const auto v = trim(fields[j]);
                if (v == "1") {
                    labels.push_back(Label::positive);
                } else if (v == "0") {
                    labels.push_back(Label::negative);
                } else {
                    throw ParseError("label must be 0 or 1, got '" + std::string(v) + "'", line_no);
                }
            } else {
                values.push_back(parse_number(fields[j], line_no));
            }
        }
    }
    if (labels.empty()) throw ParseError("no records", 0);
    const auto n = labels.size();
    const auto d = names.size();
    return Dataset(Matrix(n, d, std::move(values)), std::move(labels), std::move(names));
}

Dataset load_dataset(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open data file '" + path + "'");
    std::string first;
    while (std::getline(file, first) && blank(first)) {
    }
    bool generic = false;
    for (auto f : split_fields(first)) generic = generic || trim(f) == "label";
    file.clear();
    file.seekg(0);
    try {
        return generic ? parse_labeled_csv(file) : parse_wdbc(file);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    }
}

ScalerParams fit_scaler(const Dataset& train) {
    if (train.n_samples() == 0) throw std::invalid_argument("fit_scaler: empty training set");
    const auto& x = train.features();
    ScalerParams s{std::vector<double>(x.row(0).begin(), x.row(0).end()),
                   std::vector<double>(x.row(0).begin(), x.row(0).end())};
    for (std::size_t i = 1; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            s.mins[j] = std::min(s.mins[j], x(i, j));
            s.maxs[j] = std::max(s.maxs[j], x(i, j));
        }
    }
    return s;
}

Dataset transform(const Dataset& ds, const ScalerParams& scaler) {
    const std::size_t d = ds.n_features();
    if (scaler.mins.size() != d || scaler.maxs.size() != d) {
        throw std::invalid_argument("transform: scaler width " + std::to_string(scaler.mins.size()) +
                                    " != dataset width " + std::to_string(d));
    }
    Matrix out = ds.features();
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double range = scaler.maxs[j] - scaler.mins[j];
            double v = range > 0.0 ? (out(i, j) - scaler.mins[j]) / range : 0.0;
            out(i, j) = std::clamp(v, 0.0, 1.0);
        }
    }
    return Dataset(std::move(out), ds.labels(), ds.feature_names());
}

SplitResult stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw std::invalid_argument("stratified_split: train_fraction must lie in (0, 1)");
    }
    // Train quota per class by largest remainder, so the overall train size is
    // round(fraction * n) and every class is within one row of its exact share.
    std::vector<std::size_t> class_rows[2];
    for (std::size_t i = 0; i < ds.n_samples(); ++i) class_rows[to_int(ds.labels()[i])].push_back(i);
    for (const auto& rows : class_rows) {
        if (rows.empty()) throw std::invalid_argument("stratified_split: a class has no samples");
    }
    const auto total = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(ds.n_samples())));
    std::size_t quota[2];
    double remainder[2];
    for (int c = 0; c < 2; ++c) {
        const double exact = train_fraction * static_cast<double>(class_rows[c].size());
        quota[c] = static_cast<std::size_t>(std::floor(exact));
        remainder[c] = exact - std::floor(exact);
    }
    for (std::size_t assigned = quota[0] + quota[1]; assigned < total; ++assigned) {
        int c = remainder[1] > remainder[0] ||
                        (remainder[1] == remainder[0] && class_rows[1].size() >= class_rows[0].size())
                    ? 1
                    : 0;
        if (quota[c] == class_rows[c].size()) c = 1 - c;
        ++quota[c];
        remainder[c] = -1.0;
    }

    Rng rng(seed);
    SplitResult out;
    for (int c = 0; c < 2; ++c) {
        auto& rows = class_rows[c];
        rng.shuffle(std::span(rows));
        const auto cut = rows.begin() + static_cast<std::ptrdiff_t>(quota[c]);
        out.train_rows.insert(out.train_rows.end(), rows.begin(), cut);
        out.test_rows.insert(out.test_rows.end(), cut, rows.end());
    }
    std::ranges::sort(out.train_rows);
    std::ranges::sort(out.test_rows);
    out.train = ds.select_rows(out.train_rows);
    out.test = ds.select_rows(out.test_rows);
    return out;
}

Dataset apply_mask(const Dataset& ds, const FeatureMask& mask) {
    if (mask.size() != ds.n_features()) {
        throw std::invalid_argument("apply_mask: mask length " + std::to_string(mask.size()) +
                                    " != feature count " + std::to_string(ds.n_features()));
    }
    const auto cols = mask.selected();
    if (cols.empty()) throw std::invalid_argument("apply_mask: empty mask");
    Matrix out(ds.n_samples(), cols.size());
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (auto c : cols) names.push_back(ds.feature_names()[c]);
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = ds.features()(i, cols[k]);
    }
    return Dataset(std::move(out), ds.labels(), std::move(names));
}

}  // namespace wrapfs

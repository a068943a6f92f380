#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "wrapfs/data.hpp"
#include "wrapfs/random.hpp"

namespace wrapfs::testing {

inline std::vector<std::string> numbered_names(std::size_t d, const std::string& prefix = "f") {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) names.push_back(prefix + std::to_string(j));
    return names;
}

inline Dataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
    std::vector<Label> l;
    for (int v : labels) l.push_back(v ? Label::positive : Label::negative);
    const std::size_t d = rows.empty() ? 0 : rows.front().size();
    return Dataset(Matrix::from_rows(rows), std::move(l), numbered_names(d));
}

/// One WDBC-format line with 30 feature values all equal to `value`.
inline std::string wdbc_line(const std::string& id, const std::string& diagnosis, double value = 0.5) {
    std::ostringstream out;
    out << id << ',' << diagnosis;
    for (int j = 0; j < 30; ++j) out << ',' << value;
    return out.str();
}

/// Standard-normal features; the label is positive when at least two of the
/// `informative` columns are positive (majority sign of three).
inline Dataset majority_sign_dataset(std::size_t n, std::size_t d, const std::vector<std::size_t>& informative,
                                     std::uint64_t seed) {
    Rng rng(seed);
    Matrix x(n, d);
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.normal();
        int votes = 0;
        for (auto j : informative) votes += x(i, j) > 0.0 ? 1 : -1;
        labels.push_back(votes > 0 ? Label::positive : Label::negative);
    }
    return Dataset(std::move(x), std::move(labels), numbered_names(d));
}

/// Labels alternate; column 0 equals the label, the rest are seeded noise.
inline Dataset memorizable_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix x(n, d);
    std::vector<Label> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const bool pos = i % 2 == 0;
        labels.push_back(pos ? Label::positive : Label::negative);
        x(i, 0) = pos ? 1.0 : 0.0;
        for (std::size_t j = 1; j < d; ++j) x(i, j) = rng.uniform();
    }
    return Dataset(std::move(x), std::move(labels), numbered_names(d));
}

}  // namespace wrapfs::testing

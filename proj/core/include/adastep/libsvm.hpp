#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "adastep/types.hpp"

namespace adastep {

// Sparse feature matrix with per-row labels. n_features always covers the
// largest stored feature index.
struct Dataset {
  SparseMatrix features;
  Eigen::VectorXd labels;
  Eigen::Index n_features = 0;
};

// Reads "label index:value ..." lines with 1-based, strictly increasing
// indices. Blank lines and '#' comments are skipped. Indices are stored
// 0-based. When n_features is given the matrix gets exactly that many
// columns; an index beyond it is a parse error at the offending token.
Dataset parse_libsvm(std::istream& input,
                     std::optional<Eigen::Index> n_features = std::nullopt);
Dataset parse_libsvm(const std::string& text,
                     std::optional<Eigen::Index> n_features = std::nullopt);

// Reads a file, decompressing transparently when the path ends in ".gz".
Dataset load_libsvm(const std::string& path,
                    std::optional<Eigen::Index> n_features = std::nullopt);

// Writes rows in parse-compatible form with 1-based indices; values use
// shortest round-trip formatting, so serialize(parse(s)) is stable.
void write_libsvm(const Dataset& dataset, std::ostream& output);
std::string serialize_libsvm(const Dataset& dataset);

// Maps the smaller of exactly two distinct label values to 0 and the
// larger to 1; already-{0,1} labels pass through unchanged.
Eigen::VectorXd normalize_labels(const Eigen::VectorXd& labels);

}  // namespace adastep

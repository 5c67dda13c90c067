#include "adastep/libsvm.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "adastep/detail/format.hpp"
#include "adastep/errors.hpp"
#include "adastep/gzio.hpp"

namespace adastep {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    tokens.push_back({line.substr(start, i - start),
                      static_cast<int>(start) + 1});
  }
  return tokens;
}

double parse_double(std::string_view text, const char* what, int line,
                    int column) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(),
                                      value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw ParseError(std::string("expected ") + what + ", got '" +
                         std::string(text) + "'",
                     line, column);
  }
  if (!std::isfinite(value)) {
    throw ParseError(std::string("non-finite ") + what + " '" +
                         std::string(text) + "'",
                     line, column);
  }
  return value;
}

long parse_index(std::string_view text, int line, int column) {
  long value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(),
                                      value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw ParseError("expected a numeric feature index, got '" +
                         std::string(text) + "'",
                     line, column);
  }
  return value;
}

using detail::append_double;

}  // namespace

Dataset parse_libsvm(std::istream& input,
                     std::optional<Eigen::Index> n_features) {
  if (n_features && *n_features < 0) {
    throw UsageError("parse_libsvm: negative feature count");
  }
  std::vector<Eigen::Triplet<double>> entries;
  std::vector<double> labels;
  Eigen::Index max_index = 0;  // 1-based
  std::string line;
  int lineno = 0;
  while (std::getline(input, line)) {
    ++lineno;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    const std::vector<Token> tokens = tokenize(body);
    if (tokens.empty()) continue;
    labels.push_back(
        parse_double(tokens[0].text, "a numeric label", lineno,
                     tokens[0].column));
    const int row = static_cast<int>(labels.size()) - 1;
    long prev_index = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto& token = tokens[t];
      const auto colon = token.text.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError("expected index:value pair, got '" +
                             std::string(token.text) + "'",
                         lineno, token.column);
      }
      const long index =
          parse_index(token.text.substr(0, colon), lineno, token.column);
      if (index <= 0) {
        throw ParseError("feature index must be positive, got " +
                             std::to_string(index),
                         lineno, token.column);
      }
      if (index <= prev_index) {
        throw ParseError("non-increasing feature index " +
                             std::to_string(index) + " after " +
                             std::to_string(prev_index),
                         lineno, token.column);
      }
      if (n_features && index > *n_features) {
        throw ParseError("feature index " + std::to_string(index) +
                             " exceeds declared feature count " +
                             std::to_string(*n_features),
                         lineno, token.column);
      }
      const double value =
          parse_double(token.text.substr(colon + 1), "a numeric feature value",
                       lineno, token.column + static_cast<int>(colon) + 1);
      prev_index = index;
      max_index = std::max<Eigen::Index>(max_index, index);
      entries.emplace_back(row, static_cast<int>(index) - 1, value);
    }
  }
  Dataset dataset;
  dataset.n_features = n_features ? *n_features : max_index;
  dataset.features.resize(static_cast<Eigen::Index>(labels.size()),
                          dataset.n_features);
  dataset.features.setFromTriplets(entries.begin(), entries.end());
  dataset.features.makeCompressed();
  dataset.labels.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    dataset.labels[static_cast<Eigen::Index>(i)] = labels[i];
  }
  return dataset;
}

Dataset parse_libsvm(const std::string& text,
                     std::optional<Eigen::Index> n_features) {
  std::istringstream stream(text);
  return parse_libsvm(stream, n_features);
}

Dataset load_libsvm(const std::string& path,
                    std::optional<Eigen::Index> n_features) {
  const std::string text = read_text_file(path);
  std::istringstream stream(text);
  return parse_libsvm(stream, n_features);
}

void write_libsvm(const Dataset& dataset, std::ostream& output) {
  output << serialize_libsvm(dataset);
}

std::string serialize_libsvm(const Dataset& dataset) {
  if (dataset.features.rows() != dataset.labels.size()) {
    throw UsageError("serialize_libsvm: row/label count mismatch");
  }
  std::string out;
  for (Eigen::Index row = 0; row < dataset.features.rows(); ++row) {
    append_double(out, dataset.labels[row]);
    for (SparseMatrix::InnerIterator it(dataset.features, row); it; ++it) {
      out.push_back(' ');
      append_double(out, static_cast<double>(it.col() + 1));
      out.push_back(':');
      append_double(out, it.value());
    }
    out.push_back('\n');
  }
  return out;
}

Eigen::VectorXd normalize_labels(const Eigen::VectorXd& labels) {
  std::set<double> distinct(labels.begin(), labels.end());
  if (distinct.size() != 2) {
    std::string values = "{";
    for (double v : distinct) {
      if (values.size() > 1) values += ", ";
      append_double(values, v);
    }
    values += "}";
    throw DataError("normalize_labels: got " + std::to_string(distinct.size()) +
                    " distinct labels " + values + ", need exactly 2");
  }
  const double low = *distinct.begin();
  Eigen::VectorXd normalized(labels.size());
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    normalized[i] = labels[i] == low ? 0.0 : 1.0;
  }
  return normalized;
}

}  // namespace adastep

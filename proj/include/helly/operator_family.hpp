#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "helly/matrix.hpp"

namespace helly {

struct NamedOperator {
  std::string name;
  Matrix matrix;
};

/// A finite family of named linear operators K^d -> K^d, all over the same
/// field and dimension, d >= 2, names unique, list non-empty.
class OperatorFamily {
 public:
  OperatorFamily(const FieldSpec& field, std::size_t dim,
                 std::vector<NamedOperator> operators)
      : field_(field), dim_(dim), operators_(std::move(operators)) {
    if (dim_ < 2) throw input_error("operator family: dimension must be at least 2");
    if (operators_.empty()) throw input_error("operator family: empty");
    std::unordered_set<std::string> names;
    for (const NamedOperator& op : operators_) {
      if (op.matrix.field() != field_) throw input_error("operator family: field mismatch");
      if (op.matrix.rows() != dim_ || op.matrix.cols() != dim_) {
        throw input_error("operator \"" + op.name + "\" is not " +
                          std::to_string(dim_) + "x" + std::to_string(dim_));
      }
      if (!names.insert(op.name).second) {
        throw input_error("duplicate operator name \"" + op.name + "\"");
      }
    }
  }

  const FieldSpec& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return operators_.size(); }
  const std::vector<NamedOperator>& operators() const { return operators_; }
  const NamedOperator& operator[](std::size_t i) const { return operators_[i]; }

  /// Subfamily selected by operator indices, kept in the given order.
  OperatorFamily subfamily(const std::vector<std::size_t>& indices) const {
    std::vector<NamedOperator> sel;
    sel.reserve(indices.size());
    for (std::size_t i : indices) sel.push_back(operators_.at(i));
    return OperatorFamily(field_, dim_, std::move(sel));
  }

  /// All operators except the one at `omit`.
  OperatorFamily leave_one_out(std::size_t omit) const {
    std::vector<NamedOperator> sel;
    sel.reserve(operators_.size() - 1);
    for (std::size_t i = 0; i < operators_.size(); ++i) {
      if (i != omit) sel.push_back(operators_[i]);
    }
    return OperatorFamily(field_, dim_, std::move(sel));
  }

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<NamedOperator> operators_;
};

}  // namespace helly

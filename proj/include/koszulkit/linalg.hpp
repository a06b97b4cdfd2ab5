#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "koszulkit/field.hpp"

namespace koszulkit {

// (column, nonzero coefficient), sorted by column
using SparseRow = std::vector<std::pair<int, FieldElement>>;

// Incremental row echelon form. A row's pivot is its smallest column.
// With tracking, each stored row remembers which inserted rows it combines.
class Echelon {
 public:
  explicit Echelon(Field f, bool track = false) : field_(f), track_(track), modp_(!f.is_rational()) {}

  struct Result {
    SparseRow remainder;
    SparseRow combo;  // remainder = input - sum combo[k] * inserted_row[k]  (tracking only)
  };

  Result reduce(const SparseRow& r) const;
  // inserts r (tagged as input number `tag` when tracking); returns true if r was independent.
  // When dependent and tracking, the relation is available from last_relation().
  bool insert(const SparseRow& r);
  const SparseRow& last_relation() const { return relation_; }

  int rank() const { return static_cast<int>(modp_ ? mrows_.size() : rows_.size()); }
  int inserted() const { return inserted_; }
  // stored rows in insertion order (over F_p they are scaled to pivot coefficient 1)
  std::vector<SparseRow> rows() const;
  // fully reduced rows, each with pivot coefficient 1, ordered by pivot
  std::vector<SparseRow> reduced_rows() const;
  const Field& field() const { return field_; }

 private:
  Field field_;
  bool track_;
  int inserted_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<SparseRow> combos_;
  std::vector<int> pivot_row_;  // by column, -1 if none
  SparseRow relation_;

  // F_p: rows with residues, pivot coefficient 1
  using ModRow = std::vector<std::pair<int, std::uint32_t>>;
  bool modp_;
  std::vector<ModRow> mrows_;
  std::vector<ModRow> mcombos_;

  Result reduce_impl(const SparseRow& r, const SparseRow* combo_in) const;
  void reduce_mod(const ModRow& r, const ModRow* combo_in, ModRow& rem, ModRow& combo) const;
  ModRow to_mod(const SparseRow& r) const;
  SparseRow from_mod(const ModRow& r) const;
};

// kernel of the matrix whose columns are given as sparse vectors (right kernel of
// the linear map e_k -> cols[k]); basis vectors indexed by column number
std::vector<SparseRow> kernel_of_columns(const Field& f, const std::vector<SparseRow>& cols);

// solves sum_k x_k cols[k] = target, if possible
std::optional<SparseRow> solve_columns(const Field& f, const std::vector<SparseRow>& cols,
                                       const SparseRow& target);

SparseRow scale_row(const SparseRow& r, const FieldElement& c);
SparseRow add_rows(const SparseRow& a, const SparseRow& b);

}  // namespace koszulkit

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace dilates {

// A subset of coordinate indices {1, ..., m}, stored as a bitmask
// (bit j-1 <=> member j). Members are capped at 62 so the shift map on index
// sets never overflows the mask.
class IndexSet {
public:
  static constexpr int max_member_allowed = 62;

  IndexSet() = default;

  static IndexSet from_mask(std::uint64_t mask) {
    if (mask >> max_member_allowed) throw precondition_error("index set member above 62");
    IndexSet s;
    s.bits_ = mask;
    return s;
  }

  static IndexSet of(std::initializer_list<int> members) {
    IndexSet s;
    for (int j : members) s.add(j);
    return s;
  }

  static IndexSet full(int m) {
    if (m < 0 || m > max_member_allowed) throw precondition_error("index set arity out of range");
    return from_mask(m == 0 ? 0 : (~std::uint64_t{0} >> (64 - m)));
  }

  // Comma-separated members, e.g. "1,3,4"; "-" denotes the empty set.
  static IndexSet parse(std::string_view text) {
    IndexSet s;
    if (text == "-" || text.empty()) return s;
    std::size_t i = 0;
    while (i <= text.size()) {
      auto comma = text.find(',', i);
      std::string_view tok = text.substr(i, comma == std::string_view::npos ? text.size() - i : comma - i);
      if (tok.empty()) throw parse_error("malformed index set '" + std::string(text) + "'");
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw parse_error("malformed index set '" + std::string(text) + "'");
        v = v * 10 + (c - '0');
        if (v > max_member_allowed) throw parse_error("index set member above 62");
      }
      s.add(v);
      i = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    }
    return s;
  }

  void add(int j) {
    if (j < 1 || j > max_member_allowed) throw precondition_error("index set member out of range");
    bits_ |= std::uint64_t{1} << (j - 1);
  }

  bool contains(int j) const { return j >= 1 && j <= 64 && (bits_ >> (j - 1)) & 1; }
  bool empty() const { return bits_ == 0; }
  int count() const { return std::popcount(bits_); }
  std::uint64_t mask() const { return bits_; }

  int max_member() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }

  IndexSet intersected(IndexSet o) const { return from_mask(bits_ & o.bits_); }

  // {j + 1 : j in this}, the shift map on index sets.
  IndexSet shifted() const {
    if (bits_ >> (max_member_allowed - 1)) throw precondition_error("index set shift overflows");
    return from_mask(bits_ << 1);
  }

  // Length of the longest set of consecutive integers; 0 for the empty set.
  int longest_run() const {
    std::uint64_t x = bits_;
    int len = 0;
    while (x) {
      x &= x << 1;
      ++len;
    }
    return len;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int j = 1; j <= 64; ++j)
      if (contains(j)) out.push_back(j);
    return out;
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (int j : members()) {
      if (!first) out += ',';
      out += std::to_string(j);
      first = false;
    }
    return out + "}";
  }

  bool operator==(const IndexSet&) const = default;

private:
  std::uint64_t bits_ = 0;
};

inline int alpha(IndexSet i) { return i.longest_run(); }

inline IndexSet shift_index_set(IndexSet j) { return j.shifted(); }

}  // namespace dilates

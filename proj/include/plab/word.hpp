#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace plab {

// Freely reduced word in the free group on k generators. Letter encoding:
// +i is generator s_i (1-based), -i its inverse. Serialized as 'a'..'z' for
// generators and 'A'..'Z' for inverses.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int8_t> reduced_letters) : letters_(std::move(reduced_letters)) {}

  static Word reduce(std::span<const int8_t> letters);
  static Word parse(const std::string& text, int k);

  Word operator*(const Word& o) const;
  Word inverse() const;

  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<int8_t>& letters() const { return letters_; }

  std::string str() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<int8_t> letters_;
};

inline int8_t inverse_letter(int8_t l) { return static_cast<int8_t>(-l); }

}  // namespace plab

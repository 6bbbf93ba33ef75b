#include "plab/word.hpp"

#include <stdexcept>

namespace plab {

Word Word::reduce(std::span<const int8_t> letters) {
  std::vector<int8_t> out;
  out.reserve(letters.size());
  for (int8_t l : letters) {
    if (l == 0) throw std::invalid_argument("Word: zero letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word Word::parse(const std::string& text, int k) {
  std::vector<int8_t> letters;
  letters.reserve(text.size());
  for (char c : text) {
    int8_t l;
    if (c >= 'a' && c <= 'z') l = static_cast<int8_t>(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z') l = static_cast<int8_t>(-(c - 'A' + 1));
    else throw std::invalid_argument(std::string("Word::parse: bad character ") + c);
    if (l > k || -l > k) throw std::invalid_argument("Word::parse: letter beyond generator count");
    letters.push_back(l);
  }
  return reduce(letters);
}

Word Word::operator*(const Word& o) const {
  std::vector<int8_t> cat = letters_;
  cat.insert(cat.end(), o.letters_.begin(), o.letters_.end());
  return reduce(cat);
}

Word Word::inverse() const {
  std::vector<int8_t> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = -l;
  return Word(std::move(out));
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (int8_t l : letters_)
    s.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  return s;
}

}  // namespace plab

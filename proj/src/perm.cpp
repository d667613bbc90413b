#include "factorix/perm.hpp"

#include <cctype>
#include <vector>

#include "factorix/error.hpp"

namespace factorix {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  case ErrorCode::InvalidPermutation: return "InvalidPermutation";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
  case ErrorCode::NotNormal: return "NotNormal";
  case ErrorCode::NoSuchPrime: return "NoSuchPrime";
  case ErrorCode::InvalidPosition: return "InvalidPosition";
  case ErrorCode::ConditionFailed: return "ConditionFailed";
  case ErrorCode::AnchorInvalid: return "AnchorInvalid";
  case ErrorCode::PrefixCollision: return "PrefixCollision";
  case ErrorCode::UnknownId: return "UnknownId";
  case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
  case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  case ErrorCode::InvalidCertificate: return "InvalidCertificate";
  case ErrorCode::AllStrategiesFailed: return "AllStrategiesFailed";
  }
  return "Unknown";
}

Perm::Perm(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw Error(ErrorCode::InvalidPermutation,
                "degree " + std::to_string(degree) + " outside [0, 16]");
  degree_ = static_cast<std::uint8_t>(degree);
  for (int i = 0; i < degree; ++i)
    images_[i] = static_cast<std::uint8_t>(i);
}

Perm Perm::from_images(std::span<const int> images) {
  Perm p(static_cast<int>(images.size()));
  std::array<bool, kMaxDegree> seen{};
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 1 || v > p.degree_ || seen[v - 1])
      throw Error(ErrorCode::InvalidPermutation, "image array is not a bijection");
    seen[v - 1] = true;
    p.images_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

namespace {

struct CycleParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string &msg) const {
    throw Error(ErrorCode::ParseError,
                msg + " in \"" + std::string(text) + "\" at offset " + std::to_string(pos));
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int number() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected a point");
    int v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000)
        fail("point out of range");
      ++pos;
    }
    return v;
  }

  // Returns the cycles; an empty inner vector is the "()" token.
  std::vector<std::vector<int>> cycles() {
    std::vector<std::vector<int>> out;
    if (done())
      fail("empty permutation string");
    while (!done()) {
      expect('(');
      std::vector<int> cyc;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        out.push_back(std::move(cyc));
        continue;
      }
      cyc.push_back(number());
      for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          cyc.push_back(number());
          continue;
        }
        expect(')');
        break;
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }
};

} // namespace

int Perm::max_point(std::string_view text) {
  CycleParser parser{text};
  int best = 0;
  for (const auto &cyc : parser.cycles())
    for (int v : cyc)
      best = std::max(best, v);
  return best;
}

Perm Perm::parse(std::string_view text, int degree) {
  CycleParser parser{text};
  Perm result(degree);
  for (const auto &cyc : parser.cycles()) {
    if (cyc.empty())
      continue;
    std::array<bool, kMaxDegree> used{};
    Perm c(degree);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int v = cyc[i];
      if (v < 1 || v > degree)
        throw Error(ErrorCode::ParseError, "point " + std::to_string(v) +
                                               " exceeds degree " + std::to_string(degree));
      if (used[v - 1])
        throw Error(ErrorCode::ParseError, "repeated point in cycle \"" + std::string(text) + "\"");
      used[v - 1] = true;
      c.images_[v - 1] = static_cast<std::uint8_t>(cyc[(i + 1) % cyc.size()] - 1);
    }
    result = compose(result, c);
  }
  return result;
}

bool Perm::is_identity() const noexcept {
  for (int i = 0; i < degree_; ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r(degree_);
  for (int i = 0; i < degree_; ++i)
    r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

std::string Perm::to_cycles() const {
  std::string out;
  std::array<bool, kMaxDegree> seen{};
  for (int i = 0; i < degree_; ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    out += '(';
    int j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first)
        out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = images_[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::uint64_t Perm::key() const noexcept {
  std::uint64_t k = 0;
  for (int i = 0; i < degree_; ++i)
    k |= static_cast<std::uint64_t>(images_[i]) << (4 * (kMaxDegree - 1 - i));
  return k;
}

Perm compose(const Perm &p, const Perm &q) {
  if (p.degree_ != q.degree_)
    throw Error(ErrorCode::DegreeMismatch, "cannot compose degree " + std::to_string(p.degree_) +
                                               " with degree " + std::to_string(q.degree_));
  Perm r(p.degree_);
  for (int i = 0; i < p.degree_; ++i)
    r.images_[i] = q.images_[p.images_[i]];
  return r;
}

} // namespace factorix

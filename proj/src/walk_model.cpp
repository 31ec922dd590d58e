#include "qpw/walk_model.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "qpw/errors.hpp"

namespace qpw {

StepSet StepSet::parse(std::string_view text) {
  std::string s;
  for (char ch : text) s.push_back(char(std::toupper(static_cast<unsigned char>(ch))));
  auto trimmed = [](std::string v) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    v.erase(v.begin(), std::find_if(v.begin(), v.end(), not_space));
    v.erase(std::find_if(v.rbegin(), v.rend(), not_space).base(), v.end());
    return v;
  };
  s = trimmed(s);
  if (s.rfind("0B", 0) == 0) {
    const std::string bits = s.substr(2);
    if (bits.empty() || bits.size() > 8 || bits.find_first_not_of("01") != std::string::npos) {
      throw ParseError("bad binary mask '" + std::string(text) + "'");
    }
    return StepSet(std::uint8_t(std::stoul(bits, nullptr, 2)));
  }
  std::uint8_t mask = 0;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto it = std::find_if(kStepNames.begin(), kStepNames.end(),
                           [&](const char* name) { return token == name; });
    if (it == kStepNames.end()) throw ParseError("unknown step '" + token + "'");
    mask |= std::uint8_t(1u << (it - kStepNames.begin()));
    token.clear();
  };
  for (char ch : s) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  if (mask == 0) throw ParseError("no steps in '" + std::string(text) + "'");
  return StepSet(mask);
}

int StepSet::size() const { return std::popcount(unsigned(mask_)); }

std::vector<Step> StepSet::steps() const {
  std::vector<Step> out;
  for (int b = 0; b < 8; ++b) {
    if ((mask_ >> b) & 1u) out.push_back(kSteps[std::size_t(b)]);
  }
  return out;
}

StepSet StepSet::diagonal() const {
  std::uint8_t m = 0;
  for (const Step& s : steps()) m |= std::uint8_t(1u << step_bit(s.j, s.i));
  return StepSet(m);
}

StepSet StepSet::mirror() const {
  std::uint8_t m = 0;
  for (const Step& s : steps()) m |= std::uint8_t(1u << step_bit(-s.i, s.j));
  return StepSet(m);
}

std::string StepSet::to_string() const {
  std::string out;
  for (int b = 0; b < 8; ++b) {
    if (!((mask_ >> b) & 1u)) continue;
    if (!out.empty()) out += ",";
    out += kStepNames[std::size_t(b)];
  }
  return out;
}

bool has_vertical_symmetry(StepSet s) { return s.mirror() == s; }

RatFunc3 generating_poly(StepSet s) {
  if (s.empty()) throw EmptyStepSet("generating polynomial of the empty step set");
  // x*y * sum x^i y^j is a polynomial; divide by x*y afterwards
  Poly3 shifted;
  for (const Step& st : s.steps()) {
    shifted += Poly3::monomial(Rational(1), Monomial(unsigned(st.i + 1), unsigned(st.j + 1), 0));
  }
  return rf_normalize(shifted, px() * py());
}

Kernel kernel_of(StepSet s) {
  if (s.empty()) throw EmptyStepSet("kernel of the empty step set");
  Poly3 sum, c, ct;
  for (const Step& st : s.steps()) {
    sum += Poly3::monomial(Rational(1), Monomial(unsigned(st.i + 1), unsigned(st.j + 1), 0));
    if (st.j == -1) c += Poly3::monomial(Rational(1), Monomial(unsigned(st.i + 1), 0, 0));
    if (st.i == -1) ct += Poly3::monomial(Rational(1), Monomial(0, unsigned(st.j + 1), 0));
  }
  Poly3 K = pz() * sum - px() * py();
  return Kernel{s, K, KernelView(K), c, ct, s.contains(-1, -1) ? 1 : 0};
}

std::string to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::None: return "None";
    case DiscardReason::Empty: return "Empty";
    case DiscardReason::YConstraintVoid: return "YConstraintVoid";
    case DiscardReason::XConstraintVoid: return "XConstraintVoid";
    case DiscardReason::YDegenerate: return "YDegenerate";
    case DiscardReason::XDegenerate: return "XDegenerate";
    case DiscardReason::Trapped: return "Trapped";
    case DiscardReason::DiagonalDuplicate: return "DiagonalDuplicate";
  }
  return "?";
}

namespace {

template <class Pred>
bool all_steps(StepSet s, Pred pred) {
  for (const Step& st : s.steps()) {
    if (!pred(st)) return false;
  }
  return true;
}

// Every rule except the diagonal deduplication; each rule is invariant
// under the diagonal reflection up to swapping its X and Y versions.
DiscardReason basic_reason(StepSet s) {
  if (s.empty()) return DiscardReason::Empty;
  // walks never approach the x-axis: the y >= 0 constraint is implied
  if (all_steps(s, [](Step st) { return st.j >= 0; }) ||
      all_steps(s, [](Step st) { return st.j >= st.i; })) {
    return DiscardReason::YConstraintVoid;
  }
  if (all_steps(s, [](Step st) { return st.i >= 0; }) ||
      all_steps(s, [](Step st) { return st.i >= st.j; })) {
    return DiscardReason::XConstraintVoid;
  }
  if (all_steps(s, [](Step st) { return st.j <= 0; })) return DiscardReason::YDegenerate;
  if (all_steps(s, [](Step st) { return st.i <= 0; })) return DiscardReason::XDegenerate;
  // no step leaves the origin inside the quadrant
  if (!s.contains(1, 0) && !s.contains(0, 1) && !s.contains(1, 1)) return DiscardReason::Trapped;
  return DiscardReason::None;
}

}  // namespace

StepSet canonical_orientation(StepSet s) {
  const StepSet d = s.diagonal();
  const bool vs = has_vertical_symmetry(s), vd = has_vertical_symmetry(d);
  if (vs != vd) return vs ? s : d;
  return std::min(s, d);
}

std::vector<CensusEntry> census() {
  std::vector<CensusEntry> out;
  out.reserve(256);
  for (unsigned m = 0; m < 256; ++m) {
    const StepSet s(static_cast<std::uint8_t>(m));
    CensusEntry e{s, canonical_orientation(s), basic_reason(s)};
    if (e.reason == DiscardReason::None && e.canonical != s &&
        basic_reason(s.diagonal()) == DiscardReason::None) {
      e.reason = DiscardReason::DiagonalDuplicate;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<StepSet> census_models() {
  std::vector<StepSet> out;
  for (const auto& e : census()) {
    if (e.reason == DiscardReason::None) out.push_back(e.steps);
  }
  return out;
}

std::vector<StepSet> census_before_dedup() {
  std::vector<StepSet> out;
  for (unsigned m = 0; m < 256; ++m) {
    const StepSet s(static_cast<std::uint8_t>(m));
    if (basic_reason(s) == DiscardReason::None) out.push_back(s);
  }
  return out;
}

}  // namespace qpw

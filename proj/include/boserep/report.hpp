#pragma once

// Claim-based reporting shared by the command line driver and the
// acceptance suite.  Every verified statement becomes one claim carrying a
// short anchor label, the expected and the computed value; a report passes
// when every claim does.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace boserep::report {

struct Claim {
  std::string anchor;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct Report {
  uint32_t q = 0;
  std::string suite;
  std::vector<Claim> claims;

  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
  size_t fail_count() const {
    size_t n = 0;
    for (const auto& c : claims)
      if (!c.pass) ++n;
    return n;
  }

  void add(const std::string& anchor, const std::string& expected, const std::string& computed) {
    claims.push_back({anchor, expected, computed, expected == computed});
  }
  void add(const std::string& anchor, int64_t expected, int64_t computed) {
    claims.push_back(
        {anchor, std::to_string(expected), std::to_string(computed), expected == computed});
  }
  void add_ok(const std::string& anchor, bool ok, const std::string& expected = "holds",
              const std::string& fail_note = "violated") {
    claims.push_back({anchor, expected, ok ? expected : fail_note, ok});
  }
  void append(const Report& other) {
    claims.insert(claims.end(), other.claims.begin(), other.claims.end());
  }
};

inline std::string to_table(const Report& r) {
  size_t wa = 6, we = 8, wc = 8;
  for (const auto& c : r.claims) {
    wa = std::max(wa, c.anchor.size());
    we = std::max(we, c.expected.size());
    wc = std::max(wc, c.computed.size());
  }
  auto pad = [](const std::string& s, size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  std::ostringstream os;
  os << "suite " << r.suite << ", q = " << r.q << "\n";
  os << pad("status", 6) << "  " << pad("anchor", wa) << "  " << pad("expected", we) << "  "
     << pad("computed", wc) << "\n";
  os << std::string(6 + wa + we + wc + 6, '-') << "\n";
  for (const auto& c : r.claims)
    os << pad(c.pass ? "PASS" : "FAIL", 6) << "  " << pad(c.anchor, wa) << "  "
       << pad(c.expected, we) << "  " << pad(c.computed, wc) << "\n";
  os << (r.all_pass() ? "PASS" : "FAIL") << " " << (r.claims.size() - r.fail_count()) << "/"
     << r.claims.size() << " claims\n";
  return os.str();
}

}  // namespace boserep::report

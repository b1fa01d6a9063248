#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pebblekit/reach.hpp"

namespace pebblekit {

/// Where an expected value comes from: stated in the source publication, immediate from the
/// definitions, or worked out for this implementation (by hand or by an independent method).
enum class Provenance { published, trivial, derived };
std::string_view to_string(Provenance p);

enum class Scale { small, full_desk };
std::string_view to_string(Scale s);
Scale parse_scale(std::string_view text);

struct Check {
  int criterion = 0;
  std::string id;
  /// The statement being checked, in words.
  std::string anchor;
  Provenance provenance = Provenance::derived;
  std::string expected;
  std::string computed;
  bool passed = false;
  double seconds = 0;
};

struct VerificationReport {
  Scale scale = Scale::small;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const;
  std::size_t failures() const;
  /// True when every check tagged with `criterion` passed (and there is at least one).
  bool criterion_passed(int criterion) const;
};

constexpr int kCriterionCount = 11;
std::string_view criterion_title(int criterion);

/// Runs every check. Failures and exceptions become failed entries; nothing is thrown.
/// `on_check` sees each check as soon as it is recorded.
VerificationReport run_verification(Scale scale, const SearchOptions& options = {},
                                    const std::function<void(const Check&)>& on_check = {});

}  // namespace pebblekit

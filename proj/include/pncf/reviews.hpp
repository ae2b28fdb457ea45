#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pncf/errors.hpp"

namespace pncf {

/// One parsed Amazon-style review. Mandatory fields are reviewerID, asin,
/// reviewText, and overall; unknown JSON fields are ignored.
struct ReviewRecord {
  std::string reviewer_id;
  std::string asin;
  std::string review_text;
  double overall = 0.0;  // rating in [1,5]
  std::optional<long> vote;
  std::optional<std::string> style;

  bool operator==(const ReviewRecord&) const = default;
};

enum class ParsePolicy { abort_on_error, skip_and_count };

struct ParseStats {
  std::size_t lines = 0;
  std::size_t parsed = 0;
  std::size_t skipped = 0;
  std::string first_error;  // empty when nothing was skipped
};

/// Reads JSON-lines reviews. With abort_on_error a malformed line throws
/// ParseError carrying its 1-based line number; with skip_and_count bad
/// lines are counted in `stats` and parsing continues.
std::vector<ReviewRecord> parse_reviews(std::istream& in,
                                        ParsePolicy policy = ParsePolicy::abort_on_error,
                                        ParseStats* stats = nullptr);

std::string to_json_line(const ReviewRecord& record);

/// Number of maximal non-whitespace runs.
std::size_t word_count(std::string_view text);

}  // namespace pncf

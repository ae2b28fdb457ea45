#include "pncf/reviews.hpp"

#include <json.hpp>

#include <cctype>
#include <istream>

namespace pncf {
namespace {

using nlohmann::json;

long parse_vote(const json& v, std::size_t line) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    // raw Amazon dumps carry votes like "1,024"
    std::string digits;
    for (char c : v.get_ref<const std::string&>()) {
      if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
    }
    if (!digits.empty()) return std::stol(digits);
  }
  throw ParseError(line, "field 'vote' is not an integer");
}

std::string parse_style(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    std::string out;
    for (const auto& [key, value] : v.items()) {
      if (!out.empty()) out.push_back(' ');
      out += key;
      if (value.is_string()) {
        std::string s = value.get<std::string>();
        // trim the leading space raw dumps put after "Format:"
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        out += s;
      } else {
        out += value.dump();
      }
    }
    return out;
  }
  return v.dump();
}

ReviewRecord parse_line(const std::string& line, std::size_t line_no) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(line_no, "record is not a JSON object");

  ReviewRecord rec;
  for (const char* field : {"reviewerID", "asin", "reviewText", "overall"}) {
    if (!doc.contains(field)) {
      throw ParseError(line_no, std::string("missing mandatory field '") + field + "'");
    }
  }
  if (!doc["reviewerID"].is_string() || !doc["asin"].is_string() ||
      !doc["reviewText"].is_string()) {
    throw ParseError(line_no, "reviewerID, asin, and reviewText must be strings");
  }
  rec.reviewer_id = doc["reviewerID"].get<std::string>();
  rec.asin = doc["asin"].get<std::string>();
  rec.review_text = doc["reviewText"].get<std::string>();
  if (rec.reviewer_id.empty()) throw ParseError(line_no, "empty reviewerID");
  if (rec.asin.empty()) throw ParseError(line_no, "empty asin");
  if (!doc["overall"].is_number()) {
    throw ParseError(line_no, "field 'overall' is not a number");
  }
  rec.overall = doc["overall"].get<double>();
  if (rec.overall < 1.0 || rec.overall > 5.0) {
    throw ParseError(line_no, "rating 'overall' outside [1,5]: " +
                                  std::to_string(rec.overall));
  }
  if (doc.contains("vote") && !doc["vote"].is_null()) {
    rec.vote = parse_vote(doc["vote"], line_no);
  }
  if (doc.contains("style") && !doc["style"].is_null()) {
    rec.style = parse_style(doc["style"]);
  }
  return rec;
}

}  // namespace

std::vector<ReviewRecord> parse_reviews(std::istream& in, ParsePolicy policy,
                                        ParseStats* stats) {
  std::vector<ReviewRecord> records;
  std::string line;
  std::size_t line_no = 0;
  ParseStats local;
  while (std::getline(in, line)) {
    ++line_no;
    ++local.lines;
    if (line.empty()) continue;
    try {
      records.push_back(parse_line(line, line_no));
      ++local.parsed;
    } catch (const ParseError& e) {
      if (policy == ParsePolicy::abort_on_error) throw;
      ++local.skipped;
      if (local.first_error.empty()) local.first_error = e.what();
    }
  }
  if (stats != nullptr) *stats = local;
  return records;
}

std::string to_json_line(const ReviewRecord& record) {
  nlohmann::json doc;
  doc["reviewerID"] = record.reviewer_id;
  doc["asin"] = record.asin;
  doc["reviewText"] = record.review_text;
  doc["overall"] = record.overall;
  if (record.vote) doc["vote"] = *record.vote;
  if (record.style) doc["style"] = *record.style;
  return doc.dump();
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

}  // namespace pncf

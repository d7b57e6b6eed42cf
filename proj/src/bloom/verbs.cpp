#include <string>

#include "coursekit/bloom.hpp"
#include "coursekit/error.hpp"

namespace coursekit {

std::string_view to_string(BloomVerb v) {
  switch (v) {
    case BloomVerb::Identify: return "identify";
    case BloomVerb::Define: return "define";
    case BloomVerb::Recall: return "recall";
    case BloomVerb::Recognize: return "recognize";
    case BloomVerb::Select: return "select";
    case BloomVerb::List: return "list";
    case BloomVerb::Describe: return "describe";
    case BloomVerb::Explain: return "explain";
    case BloomVerb::Outline: return "outline";
    case BloomVerb::Determine: return "determine";
  }
  return "identify";
}

std::string_view to_string(BloomClass c) {
  switch (c) {
    case BloomClass::Knowledge: return "knowledge";
    case BloomClass::Understand: return "understand";
    case BloomClass::Analyze: return "analyze";
    case BloomClass::Apply: return "apply";
  }
  return "knowledge";
}

std::optional<BloomVerb> parse_bloom_verb(std::string_view s) {
  for (BloomVerb v : kAllVerbs) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

BloomClass collapse_verb(BloomVerb v) {
  switch (v) {
    case BloomVerb::Identify:
    case BloomVerb::Define:
    case BloomVerb::Recall:
    case BloomVerb::Recognize:
    case BloomVerb::Select:
    case BloomVerb::List:
      return BloomClass::Knowledge;
    case BloomVerb::Describe:
    case BloomVerb::Explain:
      return BloomClass::Understand;
    case BloomVerb::Outline:
      return BloomClass::Analyze;
    case BloomVerb::Determine:
      return BloomClass::Apply;
  }
  return BloomClass::Knowledge;
}

void check_class_count(int classes) {
  if (classes != 4 && classes != 10) throw ArgumentError("class count must be 4 or 10");
}

int verb_label(BloomVerb v, int classes) {
  check_class_count(classes);
  return classes == 10 ? static_cast<int>(v) : static_cast<int>(collapse_verb(v));
}

std::string_view label_name(int label, int classes) {
  check_class_count(classes);
  if (label < 0 || label >= classes) throw ArgumentError("label " + std::to_string(label) + " out of range");
  return classes == 10 ? to_string(kAllVerbs[static_cast<std::size_t>(label)])
                       : to_string(kAllClasses[static_cast<std::size_t>(label)]);
}

Vector featurize(std::span<const std::string> doc_tokens, std::span<const std::string> kp_tokens,
                 const EmbeddingTable& table) {
  const Vector doc = mean_bow(doc_tokens, table);
  const Vector kp = mean_bow(kp_tokens, table);
  std::vector<double> out(doc.values());
  out.insert(out.end(), kp.values().begin(), kp.values().end());
  return Vector(std::move(out));
}

}  // namespace coursekit

#include <algorithm>
#include <map>
#include <set>

#include "assistkit/sql.h"

namespace assistkit {

std::string_view ToString(PlaceholderResolution::Status status) {
  switch (status) {
    case PlaceholderResolution::Status::kKind:
      return "kind";
    case PlaceholderResolution::Status::kConflict:
      return "conflict";
    case PlaceholderResolution::Status::kUnresolvable:
      return "unresolvable";
  }
  return "?";
}

// STRING(n) domains also map to the plain string sanitizer; length checks
// are not implemented.
SanitizerKind SanitizerFor(const Domain& domain) {
  return domain.kind == Domain::Kind::kNumeric ? SanitizerKind::kNumeric : SanitizerKind::kString;
}

std::vector<PlaceholderResolution> ResolvePlaceholders(const std::vector<ParseOutcome>& outcomes) {
  std::map<NodeId, std::set<SanitizerKind>> kinds;
  for (const ParseOutcome& o : outcomes) {
    for (NodeId p : o.query.Placeholders()) kinds.try_emplace(p);
    if (!o.valid) continue;
    for (const Binding& b : o.bindings) kinds[b.placeholder].insert(SanitizerFor(b.domain));
  }
  std::vector<PlaceholderResolution> out;
  out.reserve(kinds.size());
  for (const auto& [node, set] : kinds) {
    PlaceholderResolution r;
    r.placeholder = node;
    if (set.empty()) {
      r.status = PlaceholderResolution::Status::kUnresolvable;
      r.reason = "placeholder appears only in queries that do not parse";
    } else if (set.size() == 1) {
      r.status = PlaceholderResolution::Status::kKind;
      r.kind = *set.begin();
    } else {
      r.status = PlaceholderResolution::Status::kConflict;
      r.conflicting.assign(set.begin(), set.end());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace assistkit

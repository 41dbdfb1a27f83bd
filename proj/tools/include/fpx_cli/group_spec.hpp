#pragma once

// JSON group-spec files: a list of factors plus an optional alias table.
//
//   {"factors": [{"kind": "cyclic", "order": 2, "label": "Z2"}, ...],
//    "aliases": {"a": "0:1", "b": "1:1"}}
//
// kind is "cyclic" (order), "table" (table, identity) or "zwindow" (bound).

#include <filesystem>
#include <stdexcept>
#include <string>

#include "fpx/words.hpp"

namespace fpx::cli {

/// Malformed or unreadable spec input; maps to exit status 2.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroupSpec {
  FreeProduct group;
  AliasTable aliases;
  std::string name;  // file stem, or "inline"

  bool hasInfiniteFactor() const;
};

GroupSpec parseGroupSpec(const std::string& text, const std::string& name = "inline");
GroupSpec loadGroupSpec(const std::filesystem::path& path);

/// parseWord with the spec's aliases; rethrows word errors as SpecError.
Word parseWordLiteral(const GroupSpec& spec, const std::string& literal);

}  // namespace fpx::cli

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sif/ast.hpp"

namespace sif {

// Value of the `instrumentation` marker on synthesized statements.
inline constexpr std::string_view kGuardMarker = "guard";
inline constexpr std::string_view kFaultMarker = "seeded-fault";

// ---- report ----

enum class Action { InsertedAssert, InsertedRequire, SeededFault, Skipped };
std::string_view to_string(Action action);

struct ReportEntry {
  NodeId site = 0;  // the statement the action is about
  std::optional<Span> span;
  Action action = Action::Skipped;
  std::string reason;  // why a site was skipped, or a warning
  std::string text;    // emitted text of what was inserted, or of the site
  std::vector<NodeId> inserted;  // top-level ids of inserted statements
};

struct InstrumentationReport {
  std::vector<ReportEntry> entries;

  std::size_t count(Action action) const;
  // One line per entry: "<action> site <id> [<span>]: <text>[ (<reason>)]".
  std::string to_text() const;
  // {"entries": [{"site", "span", "action", "reason", "text", "inserted"}]}
  std::string to_json() const;
};

// ---- rename ----

enum class IdentifierKind { Contract, Function, Variable, Struct, Enum, Event, Modifier };
std::string_view to_string(IdentifierKind kind);
std::optional<IdentifierKind> parse_identifier_kind(std::string_view text);

struct RenameRequest {
  IdentifierKind kind = IdentifierKind::Variable;
  std::string old_name;
  std::string new_name;
};

struct RenameResult {
  SourceUnit unit;
  std::size_t count = 0;  // attributes changed
  std::vector<std::string> warnings;
};

bool is_valid_identifier(std::string_view name);

// Renames every declaration of the requested kind and name, and every
// reference bound to one. References are matched by referenced-declaration
// id; an identifier without one falls back to matching by name, a member
// access only when its base is `this` or `super` (built-in members such as
// msg.value carry no id and must not match). Throws
// InvalidRequest for a bad request and NotFound when nothing matches.
RenameResult rename(const SourceUnit& unit, const RenameRequest& request);

// ---- fault seeding ----

enum class Vulnerability {
  DivisionByZero,
  UnsignedOverflow,
  UnsignedUnderflow,
  SignedOverflowUnderflow,
};
inline constexpr Vulnerability kAllVulnerabilities[] = {
    Vulnerability::DivisionByZero, Vulnerability::UnsignedOverflow,
    Vulnerability::UnsignedUnderflow, Vulnerability::SignedOverflowUnderflow};
std::string_view to_string(Vulnerability v);
std::optional<Vulnerability> parse_vulnerability(std::string_view text);

struct SeedResult {
  SourceUnit unit;
  InstrumentationReport report;
  std::size_t injected_nodes = 0;
};

// Injects the vulnerability's statements at the start of the body of
// `target` (by display name) or of the first function with a body.
// Throws NoInjectableFunction or UnknownTarget.
SeedResult seed_fault(const SourceUnit& unit, Vulnerability vuln,
                      std::optional<std::string> target = std::nullopt);

// ---- assertion insertion ----

struct AssertionResult {
  SourceUnit unit;
  InstrumentationReport report;
};

// Guards arithmetic sites: `a = b op c`, `a op= c` and `T a = b op c` whose
// operands are identifiers or literals. Division gets a require before the
// site; +, - and * get the matching assert after it.
AssertionResult insert_assertions(
    const SourceUnit& unit,
    const std::set<Vulnerability>& selection = {std::begin(kAllVulnerabilities),
                                                std::end(kAllVulnerabilities)});

// ---- make signed ----

struct MakeSignedResult {
  SourceUnit unit;
  std::size_t count = 0;
};

// uint / uintN -> int / intN in every declared type name.
MakeSignedResult make_signed(const SourceUnit& unit);

}  // namespace sif

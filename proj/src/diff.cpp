#include "sif/analyses.hpp"

namespace sif {
namespace {

class Differ {
 public:
  std::vector<DiffRecord> run(const AstNode& left, const AstNode& right) {
    compare(left, right);
    return std::move(records_);
  }

 private:
  DiffRecord record(DiffCategory category, std::string kind) {
    DiffRecord r;
    r.path = path_;
    r.category = category;
    r.node_kind = std::move(kind);
    return r;
  }

  void compare(const AstNode& left, const AstNode& right) {
    if (left.kind() != right.kind()) {
      DiffRecord r = record(DiffCategory::KindMismatch,
                            std::string(to_string(left.kind())));
      r.left = to_string(left.kind());
      r.right = to_string(right.kind());
      r.left_span = left.span();
      r.right_span = right.span();
      records_.push_back(std::move(r));
      return;
    }
    for (const auto& spec : schema_for(left.kind()).fields) {
      if (spec.role != FieldRole::Syntax) continue;
      Value a = effective_value(left, spec);
      Value b = effective_value(right, spec);
      if (a == b) continue;
      DiffRecord r = record(DiffCategory::FieldMismatch,
                            std::string(to_string(left.kind())));
      r.field = spec.name;
      r.left = to_string(a);
      r.right = to_string(b);
      r.left_span = left.span();
      r.right_span = right.span();
      records_.push_back(std::move(r));
    }
    std::size_t common = std::min(left.child_count(), right.child_count());
    for (std::size_t i = 0; i < common; ++i) {
      path_.push_back(i);
      compare(left.child(i), right.child(i));
      path_.pop_back();
    }
    for (std::size_t i = common; i < left.child_count(); ++i) {
      path_.push_back(i);
      const AstNode& extra = left.child(i);
      DiffRecord r = record(DiffCategory::MissingRight,
                            std::string(to_string(extra.kind())));
      r.left = to_string(extra.kind());
      r.left_span = extra.span();
      records_.push_back(std::move(r));
      path_.pop_back();
    }
    for (std::size_t i = common; i < right.child_count(); ++i) {
      path_.push_back(i);
      const AstNode& extra = right.child(i);
      DiffRecord r = record(DiffCategory::MissingLeft,
                            std::string(to_string(extra.kind())));
      r.right = to_string(extra.kind());
      r.right_span = extra.span();
      records_.push_back(std::move(r));
      path_.pop_back();
    }
  }

  std::vector<std::size_t> path_;
  std::vector<DiffRecord> records_;
};

std::string span_text(const std::optional<Span>& span) {
  return span ? to_string(*span) : "-";
}

}  // namespace

std::string_view to_string(DiffCategory category) {
  switch (category) {
    case DiffCategory::KindMismatch: return "kind-mismatch";
    case DiffCategory::FieldMismatch: return "field-mismatch";
    case DiffCategory::MissingLeft: return "missing-left";
    case DiffCategory::MissingRight: return "missing-right";
  }
  return "";
}

std::string to_string(const DiffRecord& r) {
  std::string path = "/";
  for (std::size_t i = 0; i < r.path.size(); ++i) {
    if (i) path += "/";
    path += std::to_string(r.path[i]);
  }
  std::string out = path + " " + std::string(to_string(r.category)) + " ";
  switch (r.category) {
    case DiffCategory::KindMismatch:
      out += r.left + " vs " + r.right;
      break;
    case DiffCategory::FieldMismatch:
      out += r.node_kind + "." + r.field + ": " + r.left + " vs " + r.right;
      break;
    case DiffCategory::MissingLeft:
    case DiffCategory::MissingRight:
      out += r.node_kind;
      break;
  }
  return out + " (left " + span_text(r.left_span) + ", right " +
         span_text(r.right_span) + ")";
}

std::vector<DiffRecord> ast_diff(const AstNode& left, const AstNode& right) {
  return Differ().run(left, right);
}

std::vector<DiffRecord> ast_diff(const SourceUnit& left, const SourceUnit& right) {
  return ast_diff(left.root(), right.root());
}

}  // namespace sif

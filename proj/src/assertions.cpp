#include "sif/transforms.hpp"
#include "sif/traverse.hpp"
#include "synth.hpp"

namespace sif {
namespace {

// One guardable statement: a = b op c, with `result` standing for a.
struct Site {
  char op = 0;
  const AstNode* result = nullptr;  // assigned expression; null for a declaration
  const AstNode* declared = nullptr;  // the VariableDeclaration, if any
  const AstNode* left = nullptr;
  const AstNode* right = nullptr;
  std::string type;  // integer type used to pick the template, may be empty
};

bool arithmetic(const std::string& op) {
  return op == "+" || op == "-" || op == "*" || op == "/";
}

// Guards repeat their operands, so operands must be free of side effects.
bool pure(const AstNode& n) {
  switch (n.kind()) {
    case NodeKind::Identifier:
      return true;
    case NodeKind::Literal:
      return n.get_string("kind") == "number";
    case NodeKind::MemberAccess:
      return pure(n.child(0));
    case NodeKind::IndexAccess:
      return n.child_count() == 2 && pure(n.child(0)) && pure(n.child(1));
    default:
      return false;
  }
}

std::string declared_type(const AstNode& var) {
  if (var.child_count() > 0 && var.child(0).kind() == NodeKind::ElementaryTypeName) {
    return var.child(0).get_string("name");
  }
  return var.get_string("typeString");
}

std::optional<Site> find_site(const AstNode& stmt) {
  Site site;
  if (stmt.kind() == NodeKind::ExpressionStatement &&
      stmt.child(0).kind() == NodeKind::Assignment) {
    const AstNode& assign = stmt.child(0);
    const std::string op = assign.get_string("operator");
    site.result = &assign.child(0);
    site.type = assign.child(0).get_string("typeString");
    if (op == "=") {
      const AstNode& rhs = assign.child(1);
      if (rhs.kind() != NodeKind::BinaryOperation ||
          !arithmetic(rhs.get_string("operator"))) {
        return std::nullopt;
      }
      site.op = rhs.get_string("operator")[0];
      site.left = &rhs.child(0);
      site.right = &rhs.child(1);
      if (site.type.empty()) site.type = rhs.get_string("typeString");
    } else if (op.size() == 2 && op[1] == '=' && arithmetic(op.substr(0, 1))) {
      // a op= c reads as a = a op c.
      site.op = op[0];
      site.left = &assign.child(0);
      site.right = &assign.child(1);
    } else {
      return std::nullopt;
    }
    return site;
  }
  if (stmt.kind() == NodeKind::VariableDeclarationStatement &&
      stmt.child_count() == 2 &&
      stmt.child(0).kind() == NodeKind::VariableDeclaration &&
      stmt.get_string("declarationSlots").size() <= 1) {
    const AstNode& value = stmt.child(1);
    if (value.kind() != NodeKind::BinaryOperation ||
        !arithmetic(value.get_string("operator"))) {
      return std::nullopt;
    }
    site.op = value.get_string("operator")[0];
    site.declared = &stmt.child(0);
    site.left = &value.child(0);
    site.right = &value.child(1);
    site.type = declared_type(stmt.child(0));
    if (site.type.empty()) site.type = value.get_string("typeString");
    return site;
  }
  return std::nullopt;
}

Vulnerability vulnerability_of(char op, bool is_signed) {
  if (op == '/') return Vulnerability::DivisionByZero;
  if (is_signed) return Vulnerability::SignedOverflowUnderflow;
  return op == '-' ? Vulnerability::UnsignedUnderflow
                   : Vulnerability::UnsignedOverflow;
}

class GuardBuilder {
 public:
  GuardBuilder(synth::Builder& b, const Site& site) : b_(b), site_(site) {}

  AstNode a() {
    if (site_.result) return synth::copy(*site_.result, b_);
    AstNode id = b_.identifier(site_.declared->get_string("name"),
                               site_.declared->get_string("typeString"));
    id.set("referencedDeclaration", site_.declared->id());
    return id;
  }
  AstNode b() { return synth::copy(*site_.left, b_); }
  AstNode c() { return synth::copy(*site_.right, b_); }
  AstNode zero() { return b_.number("0"); }

  AstNode bin(const char* op, AstNode l, AstNode r) {
    return b_.binary(op, std::move(l), std::move(r));
  }
  AstNode both(AstNode l, AstNode r) { return bin("&&", std::move(l), std::move(r)); }
  AstNode paren(AstNode n) { return b_.paren(std::move(n)); }
  AstNode check(const char* fn, AstNode cond) {
    std::vector<AstNode> args;
    args.push_back(std::move(cond));
    return b_.expression_statement(b_.call(fn, std::move(args)));
  }

  // (b != 0 && c != 0) ? assert(nonzero) : assert(a == 0), as if/else.
  AstNode product(AstNode nonzero) {
    return b_.if_else(both(bin("!=", b(), zero()), bin("!=", c(), zero())),
                      check("assert", std::move(nonzero)),
                      check("assert", bin("==", a(), zero())));
  }

  AstNode guard(bool is_signed) {
    switch (site_.op) {
      case '/':
        return check("require", bin("!=", c(), zero()));
      case '+':
        if (!is_signed) {
          return check("assert", both(bin(">=", a(), b()), bin(">=", a(), c())));
        }
        return check("assert",
                     bin("||",
                         paren(both(bin(">=", c(), zero()), bin(">=", a(), b()))),
                         paren(both(bin("<", c(), zero()), bin("<", a(), b())))));
      case '-':
        if (!is_signed) {
          return check("assert", both(bin(">=", b(), a()), bin(">=", b(), c())));
        }
        return check("assert",
                     bin("||",
                         paren(both(bin(">=", c(), zero()), bin("<=", a(), b()))),
                         paren(both(bin("<", c(), zero()), bin(">", a(), b())))));
      default:  // '*'
        if (!is_signed) {
          return product(both(bin(">=", a(), b()), bin(">=", a(), c())));
        }
        return product(both(paren(bin("==", bin("/", a(), b()), c())),
                            paren(bin("==", bin("/", a(), c()), b()))));
    }
  }

 private:
  synth::Builder& b_;
  const Site& site_;
};

bool is_guard(const AstNode& n) {
  return (n.kind() == NodeKind::ExpressionStatement ||
          n.kind() == NodeKind::IfStatement) &&
         n.get_string("instrumentation") == kGuardMarker;
}

ReportEntry entry_for(const AstNode& stmt, Action action) {
  ReportEntry e;
  e.site = stmt.id();
  e.span = stmt.span();
  e.action = action;
  return e;
}

}  // namespace

AssertionResult insert_assertions(const SourceUnit& unit,
                                  const std::set<Vulnerability>& selection) {
  AssertionResult result;
  auto& entries = result.report.entries;

  auto skip = [&](const AstNode& stmt, std::string reason) {
    ReportEntry e = entry_for(stmt, Action::Skipped);
    e.reason = std::move(reason);
    e.text = synth::text_of(stmt);
    entries.push_back(std::move(e));
  };

  Hooks hooks;
  hooks.visit = [&](Cursor& cur) {
    const AstNode& node = cur.node();
    if (node.kind() != NodeKind::Block) {
      // Single-statement bodies have nowhere to put a guard.
      if (!is_statement(node.kind())) return;
      for (const auto& child : node.children()) {
        if (!is_statement(child.kind()) || child.kind() == NodeKind::Block) continue;
        if (find_site(child)) skip(child, "site is not directly inside a block");
      }
      return;
    }

    synth::Builder b([&] { return cur.fresh_id(); });
    std::size_t shift = 0;
    for (std::size_t i = 0; i < node.child_count(); ++i) {
      const AstNode& stmt = node.child(i);
      std::optional<Site> site = find_site(stmt);
      if (!site) continue;

      std::string_view sign = signedness_of(site->type);
      bool unknown = site->type.empty();
      if (!unknown && sign == "unknown") {
        skip(stmt, "not integer-typed (" + site->type + ")");
        continue;
      }
      bool is_signed = sign == "signed";
      if (!selection.count(vulnerability_of(site->op, is_signed))) continue;

      bool before = site->op == '/';
      const AstNode* neighbour =
          before ? (i > 0 ? &node.child(i - 1) : nullptr)
                 : (i + 1 < node.child_count() ? &node.child(i + 1) : nullptr);
      if (neighbour && is_guard(*neighbour)) {
        skip(stmt, "already guarded");
        continue;
      }
      if (!pure(*site->left) || !pure(*site->right) ||
          (site->result && !pure(*site->result))) {
        skip(stmt, "operand is not an identifier or literal");
        continue;
      }

      AstNode guard = GuardBuilder(b, *site).guard(is_signed);
      guard.set("instrumentation", std::string(kGuardMarker));
      ReportEntry e = entry_for(
          stmt, before ? Action::InsertedRequire : Action::InsertedAssert);
      e.text = synth::text_of(guard);
      e.inserted.push_back(guard.id());
      if (unknown) e.reason = "signedness unknown; unsigned template used";
      entries.push_back(std::move(e));

      if (before) {
        cur.insert_before(i + shift, std::move(guard));
      } else {
        cur.insert_after(i + shift, std::move(guard));
      }
      ++shift;
    }
  };
  result.unit = walk(unit, hooks).unit;
  return result;
}

}  // namespace sif

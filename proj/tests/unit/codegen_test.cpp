#include <gtest/gtest.h>

#include <chrono>
#include <map>
#include <random>
#include <regex>

#include "sif/codegen.hpp"
#include "sif/traverse.hpp"
#include "support.hpp"

namespace sif {
namespace {

std::string squeeze_indent(const std::string& text) {
  return std::regex_replace(text, std::regex("\n[ \t]+"), "\n");
}

const AstNode& first_of(const SourceUnit& unit, NodeKind kind) {
  const AstNode* hit = nullptr;
  unit.root().for_each([&](const AstNode& n) {
    if (!hit && n.kind() == kind) hit = &n;
  });
  if (!hit) throw std::runtime_error("no node of that kind");
  return *hit;
}

TEST(Emit, StructTemplate) {
  SourceUnit unit = test::load_fixture("struct_request");
  std::string text = emit_node(first_of(unit, NodeKind::StructDefinition));
  EXPECT_EQ(squeeze_indent(text),
            squeeze_indent("struct Request {\n  bytes data;\n"
                           "  function (bytes memory) external callback;\n}\n"));
}

TEST(Emit, StructAfterVisitRename) {
  SourceUnit unit = test::load_fixture("struct_request");
  Hooks hooks;
  hooks.visit = [](Cursor& c) {
    if (c.kind() == NodeKind::StructDefinition &&
        c.node().get_string("name") == "Request") {
      c.set("name", std::string("DirectRequest"));
    }
  };
  SourceUnit renamed = walk(unit, hooks).unit;
  std::string text = emit_node(first_of(renamed, NodeKind::StructDefinition));
  EXPECT_EQ(text.rfind("struct DirectRequest {", 0), 0u) << text;
}

TEST(Emit, Leaves) {
  AstNode lit(1, NodeKind::Literal);
  lit.set("kind", std::string("number"));
  lit.set("value", std::string("0"));
  EXPECT_EQ(emit_node(lit), "0");
  AstNode str(2, NodeKind::Literal);
  str.set("kind", std::string("string"));
  str.set("value", std::string("a\"b"));
  EXPECT_EQ(emit_node(str), "\"a\\\"b\"");
  EXPECT_EQ(emit_source(SourceUnit()), "");
}

TEST(Emit, MalformedTreeIsArityViolation) {
  AstNode bin(1, NodeKind::BinaryOperation);
  bin.set("operator", std::string("+"));
  AstNode a(2, NodeKind::Identifier);
  a.set("name", std::string("a"));
  bin.add_child(a);
  try {
    emit_node(bin);
    FAIL() << "expected ArityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityViolation);
  }
}

TEST(Emit, FormatConfig) {
  SourceUnit unit = test::load_fixture("struct_request");
  FormatConfig two;
  two.indent_width = 2;
  std::string text = emit_source(unit, two);
  EXPECT_NE(text.find("\n  struct Request {\n    bytes data;\n"), std::string::npos) << text;

  FormatConfig crlf;
  crlf.newline = "\r\n";
  std::string dos = emit_source(unit, crlf);
  EXPECT_EQ(std::regex_replace(dos, std::regex("\r\n"), "\n"), emit_source(unit));

  FormatConfig bad;
  bad.indent_width = -1;
  EXPECT_THROW(emit_source(unit, bad), Error);
}

TEST(Emit, MatchesGoldenFiles) {
  for (const auto& stem : test::corpus_stems()) {
    auto golden = test::corpus_dir() / (stem + ".expected.sol");
    ASSERT_TRUE(std::filesystem::exists(golden)) << golden;
    EXPECT_EQ(emit_source(test::load_fixture(stem)), test::read_text(golden)) << stem;
  }
}

TEST(Emit, Deterministic) {
  for (const auto& stem : test::corpus_stems()) {
    SourceUnit a = test::load_fixture(stem);
    SourceUnit b = test::load_fixture(stem);
    std::string first = emit_source(a);
    EXPECT_EQ(first, emit_source(a)) << stem;
    EXPECT_EQ(first, emit_source(b)) << stem;
  }
}

TEST(Emit, NeverContainsComments) {
  for (const auto& stem : test::corpus_stems()) {
    std::string text = emit_source(test::load_fixture(stem));
    // Drop string literals first; comment markers inside them are data.
    text = std::regex_replace(text, std::regex(R"("([^"\\]|\\.)*")"), "\"\"");
    EXPECT_EQ(text.find("//"), std::string::npos) << stem;
    EXPECT_EQ(text.find("/*"), std::string::npos) << stem;
  }
}

TEST(Emit, OutputEndsWithNewline) {
  for (const auto& stem : test::corpus_stems()) {
    std::string text = emit_source(test::load_fixture(stem));
    ASSERT_FALSE(text.empty()) << stem;
    EXPECT_EQ(text.back(), '\n') << stem;
  }
}

TEST(Emit, AztraTokenSignatures) {
  std::string text = emit_source(test::load_fixture("aztratoken"));
  for (const char* sig : {
           "function AztraToken()",
           "function _transfer(address _from, address _to, uint _value)",
           "function transfer(address _to, uint256 _value)",
           "function transferFrom(address _from, address _to, uint256 _value)",
           "function approve(address _spender, uint256 _value)",
           "function burn(uint256 _value)",
           "function burnFrom(address _from, uint256 _value)",
           "function mintToken(address target, uint256 mintedAmount)",
           "function freezeAccount(address target, bool freeze)",
           "function transferOwnership(address newOwner)"}) {
    EXPECT_NE(text.find(sig), std::string::npos) << sig;
  }
}

TEST(Emit, SmallFixturesWithinBudget) {
  for (const auto& stem : test::corpus_stems()) {
    SourceUnit unit = test::load_fixture(stem);
    auto start = std::chrono::steady_clock::now();
    std::string text = emit_source(unit);
    std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    ASSERT_LT(std::count(text.begin(), text.end(), '\n'), 1000) << stem;
    EXPECT_LT(took.count(), 4.0) << stem;
  }
}

// Precedence oracle: random expression trees are emitted and parsed back
// with a small precedence-climbing parser written from the language's
// operator table. The parse must give back the tree's shape.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  AstNode make(int depth) {
    int choice = depth == 0 ? 0 : static_cast<int>(rng_() % 6);
    if (choice <= 1) {
      AstNode n(id_++, NodeKind::Identifier);
      n.set("name", std::string(1, static_cast<char>('a' + rng_() % 5)));
      return n;
    }
    if (choice == 2) {
      static const char* ops[] = {"-", "!", "~"};
      AstNode n(id_++, NodeKind::UnaryOperation);
      n.set("operator", std::string(ops[rng_() % 3]));
      n.set("prefix", true);
      n.add_child(make(depth - 1));
      return n;
    }
    static const char* ops[] = {"*", "/", "%", "+",  "-",  "<<", ">>", "&",  "^",
                                "|", "<", ">", "<=", ">=", "==", "!=", "&&", "||"};
    AstNode n(id_++, NodeKind::BinaryOperation);
    n.set("operator", std::string(ops[rng_() % std::size(ops)]));
    n.add_child(make(depth - 1));
    n.add_child(make(depth - 1));
    return n;
  }

 private:
  std::mt19937 rng_;
  NodeId id_ = 1;
};

std::string shape(const AstNode& n) {
  switch (n.kind()) {
    case NodeKind::Identifier:
      return n.get_string("name");
    case NodeKind::UnaryOperation:
      return "(" + n.get_string("operator") + "u " + shape(n.child(0)) + ")";
    case NodeKind::BinaryOperation:
      return "(" + n.get_string("operator") + " " + shape(n.child(0)) + " " +
             shape(n.child(1)) + ")";
    case NodeKind::TupleExpression:
      return shape(n.child(0));
    default:
      return "?";
  }
}

class MiniParser {
 public:
  explicit MiniParser(const std::string& text) {
    static const std::regex token(R"(\s*(<<|>>|<=|>=|==|!=|&&|\|\||--|\+\+|[-+*/%&|^<>!~()]|[a-z]))");
    std::string rest = text;
    std::smatch m;
    while (std::regex_search(rest, m, token, std::regex_constants::match_continuous)) {
      tokens_.push_back(m[1]);
      rest = m.suffix();
    }
    if (!std::all_of(rest.begin(), rest.end(), ::isspace)) tokens_.push_back("<junk>");
  }

  std::string parse() {
    std::string e = binary(0);
    if (pos_ != tokens_.size()) throw std::runtime_error("trailing tokens at " + peek());
    return e;
  }

 private:
  // Loosest first.
  static int level(const std::string& op) {
    static const std::map<std::string, int> table = {
        {"||", 1}, {"&&", 2}, {"==", 3}, {"!=", 3}, {"<", 4},  {">", 4},
        {"<=", 4}, {">=", 4}, {"|", 5},  {"^", 6},  {"&", 7},  {"<<", 8},
        {">>", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
    auto it = table.find(op);
    return it == table.end() ? -1 : it->second;
  }

  std::string peek() const { return pos_ < tokens_.size() ? tokens_[pos_] : ""; }

  std::string binary(int min) {
    std::string lhs = unary();
    for (;;) {
      std::string op = peek();
      int lv = level(op);
      if (lv < 0 || lv < min) return lhs;
      ++pos_;
      std::string rhs = binary(lv + 1);  // left associative
      lhs = "(" + op + " " + lhs + " " + rhs + ")";
    }
  }

  std::string unary() {
    std::string t = peek();
    if (t == "-" || t == "!" || t == "~") {
      ++pos_;
      return "(" + t + "u " + unary() + ")";
    }
    if (t == "(") {
      ++pos_;
      std::string e = binary(0);
      if (peek() != ")") throw std::runtime_error("missing )");
      ++pos_;
      return e;
    }
    if (t.size() == 1 && std::islower(static_cast<unsigned char>(t[0]))) {
      ++pos_;
      return t;
    }
    throw std::runtime_error("unexpected token '" + t + "'");
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

class Precedence : public ::testing::TestWithParam<unsigned> {};

TEST_P(Precedence, EmittedTextParsesBackToSameTree) {
  ExprGen gen(GetParam());
  for (int i = 0; i < 50; ++i) {
    AstNode expr = gen.make(4);
    std::string text = emit_node(expr);
    std::string parsed;
    try {
      parsed = MiniParser(text).parse();
    } catch (const std::exception& e) {
      ADD_FAILURE() << text << ": " << e.what();
      continue;
    }
    EXPECT_EQ(parsed, shape(expr)) << text;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Precedence, ::testing::Range(1u, 21u));

}  // namespace
}  // namespace sif

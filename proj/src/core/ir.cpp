#include "core/ir.hpp"

namespace condlint {
namespace {

void indent(std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

void dump_expr(std::string& out, const Expr& e, int depth) {
  indent(out, depth);
  switch (e.kind) {
    case ExprKind::BoolLit:
      out += e.bool_value ? "BoolLit(True)" : "BoolLit(False)";
      break;
    case ExprKind::Name:
      out += "Name(" + e.name + ")";
      break;
    case ExprKind::Not:
      out += "Not";
      break;
    case ExprKind::Compare:
      out += "Compare(" + e.lhs.canon + " " + std::string(cmp_op_text(e.cmp_op)) +
             " " + e.rhs.canon + ")";
      break;
    case ExprKind::Opaque:
      out += "Opaque";
      break;
  }
  out += " @" + e.span.str() + " <" + e.fp.canon + ">\n";
  if (e.kind == ExprKind::Not && e.inner) dump_expr(out, *e.inner, depth + 1);
}

void dump_stmts(std::string& out, const std::vector<Stmt>& stmts, int depth);

void dump_stmt(std::string& out, const Stmt& s, int depth) {
  indent(out, depth);
  switch (s.kind) {
    case StmtKind::Pass:
      out += "Pass @" + s.span.str() + "\n";
      return;
    case StmtKind::Return:
      out += "Return @" + s.span.str() + "\n";
      if (s.value) dump_expr(out, *s.value, depth + 1);
      return;
    case StmtKind::Assign:
      out += "Assign " + (s.target_name ? *s.target_name : "<" + s.target_fp.canon + ">") +
             " @" + s.span.str() + "\n";
      if (s.value) dump_expr(out, *s.value, depth + 1);
      return;
    case StmtKind::AugAssign:
      out += "AugAssign " + (s.target_name ? *s.target_name : "<" + s.target_fp.canon + ">") +
             " " + s.aug_op + " @" + s.span.str() + "\n";
      if (s.value) dump_expr(out, *s.value, depth + 1);
      return;
    case StmtKind::OpaqueSimple:
      out += "OpaqueSimple @" + s.span.str() + " <" + s.fp.canon + ">\n";
      return;
    case StmtKind::OpaqueCompound: {
      out += "OpaqueCompound <" + s.header_fp.canon + "> @" + s.span.str() + "\n";
      for (const auto& body : s.bodies) {
        indent(out, depth + 1);
        out += "clause:\n";
        dump_stmts(out, body, depth + 2);
      }
      return;
    }
    case StmtKind::IfChainStmt: {
      out += "IfChain @" + s.span.str() + "\n";
      for (const auto& br : s.chain->branches) {
        indent(out, depth + 1);
        out += br.is_elif ? "elif @" : "if @";
        out += br.span.str() + "\n";
        dump_expr(out, br.cond, depth + 2);
        dump_stmts(out, br.body, depth + 2);
      }
      if (s.chain->else_body) {
        indent(out, depth + 1);
        out += "else @" + s.chain->else_span->str() + "\n";
        dump_stmts(out, *s.chain->else_body, depth + 2);
      }
      return;
    }
  }
}

void dump_stmts(std::string& out, const std::vector<Stmt>& stmts, int depth) {
  for (const auto& s : stmts) dump_stmt(out, s, depth);
}

}  // namespace

std::string_view cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Is: return "is";
    case CmpOp::IsNot: return "is not";
    case CmpOp::In: return "in";
    case CmpOp::NotIn: return "not in";
  }
  return "?";
}

std::string dump_ir(const ParsedModule& module) {
  std::string out = "module " + module.path() + " lloc=" +
                    std::to_string(module.lloc) + "\n";
  for (const auto& err : module.parse_errors) {
    out += "error @" + err.span.str() + ": " + err.message + "\n";
  }
  dump_stmts(out, module.body, 0);
  return out;
}

}  // namespace condlint

#pragma once

#include <string_view>

#include "tcforge/logic/ast.hpp"

namespace tcforge::logic {

enum class FormulaClass { SigB0, SigB1, PiB1, gSigB1, gPiB1, SigB0Th, SigB0Modm, Other };

inline std::string_view class_name(FormulaClass c) {
  switch (c) {
    case FormulaClass::SigB0: return "SigB0";
    case FormulaClass::SigB1: return "SigB1";
    case FormulaClass::PiB1: return "PiB1";
    case FormulaClass::gSigB1: return "gSigB1";
    case FormulaClass::gPiB1: return "gPiB1";
    case FormulaClass::SigB0Th: return "SigB0Th";
    case FormulaClass::SigB0Modm: return "SigB0Modm";
    case FormulaClass::Other: return "Other";
  }
  return "Other";
}

namespace classify_detail {

struct Census {
  bool str_exists = false;
  bool str_forall = false;
  bool thq = false;
  bool modm = false;
};

inline void census(const FormulaPtr& f, Census& c) {
  if (!f) return;
  using K = Formula::Kind;
  if (f->kind == K::ExistsStr) c.str_exists = true;
  if (f->kind == K::ForallStr) c.str_forall = true;
  if (f->kind == K::Thq) c.thq = true;
  if (f->kind == K::Modm) c.modm = true;
  census(f->a, c);
  census(f->b, c);
}

inline bool no_string_quantifiers(const FormulaPtr& f) {
  Census c;
  census(f, c);
  return !c.str_exists && !c.str_forall && !c.thq && !c.modm;
}

// Closure of SigB0 under &, |, bounded number quantifiers and one kind of
// bounded string quantifier (negation only over SigB0 parts).
inline bool generalized(const FormulaPtr& f, Formula::Kind str_kind) {
  using K = Formula::Kind;
  if (no_string_quantifiers(f)) return true;
  switch (f->kind) {
    case K::And:
    case K::Or: return generalized(f->a, str_kind) && generalized(f->b, str_kind);
    case K::ExistsNum:
    case K::ForallNum: return generalized(f->a, str_kind);
    default: return f->kind == str_kind && generalized(f->a, str_kind);
  }
}

}  // namespace classify_detail

// Most specific syntactic class.
inline FormulaClass classify(const FormulaPtr& f) {
  using namespace classify_detail;
  using K = Formula::Kind;
  Census c;
  census(f, c);
  const bool strq = c.str_exists || c.str_forall;
  if (!strq) {
    if (!c.thq && !c.modm) return FormulaClass::SigB0;
    if (c.thq && !c.modm) return FormulaClass::SigB0Th;
    if (c.modm && !c.thq) return FormulaClass::SigB0Modm;
    return FormulaClass::Other;
  }
  if (c.thq || c.modm) return FormulaClass::Other;
  // A prefix block of one kind of string quantifier over a SigB0 matrix.
  for (K kind : {K::ExistsStr, K::ForallStr}) {
    const Formula* g = f.get();
    bool any = false;
    while (g->kind == kind) {
      any = true;
      g = g->a.get();
    }
    if (any && !c.str_exists != !c.str_forall && no_string_quantifiers(std::shared_ptr<const Formula>(f, g)))
      return kind == K::ExistsStr ? FormulaClass::SigB1 : FormulaClass::PiB1;
  }
  if (c.str_exists && !c.str_forall && generalized(f, K::ExistsStr)) return FormulaClass::gSigB1;
  if (c.str_forall && !c.str_exists && generalized(f, K::ForallStr)) return FormulaClass::gPiB1;
  return FormulaClass::Other;
}

// Whether `c` is contained in `target` by the class inclusions.
inline bool within(FormulaClass c, FormulaClass target) {
  if (c == target) return true;
  if (c == FormulaClass::SigB0) return target != FormulaClass::Other;
  if (c == FormulaClass::SigB1) return target == FormulaClass::gSigB1;
  if (c == FormulaClass::PiB1) return target == FormulaClass::gPiB1;
  return target == FormulaClass::Other;
}

}  // namespace tcforge::logic

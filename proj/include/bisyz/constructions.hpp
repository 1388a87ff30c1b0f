#pragma once

#include <string>
#include <vector>

#include "bisyz/core.hpp"
#include "bisyz/linsys.hpp"
#include "json.hpp"

namespace bisyz {

enum class RangeClassValue {
  InvalidTooSmall,
  GapGeneral,
  RangeB,
  RangeA,
  InvalidTooLarge
};

struct RangeClass {
  RangeClassValue value = RangeClassValue::InvalidTooSmall;
  /* max(a,b)(m+n)/(min(a,b)min(m,n)) + 1; Range B is (threshold, upper]. */
  Rational threshold;
  /* max(a,b)(m+n)/min(m,n) + 1. */
  Rational upper;
  long long h0 = 0;
  /* r < (m+1)(n+1): no monomial basepoint-free system of dimension r. */
  bool monomial_gap_note = false;
  /* max(a,b) < min(m,n)·min(a,b): the general gap below Range B is empty. */
  bool corollary1_applies = false;
  /* max(a,b)(m+n) < (mn+m+n)·min(m,n)·min(a,b): the monomial gap is empty. */
  bool corollary2_applies = false;
};

std::string range_class_text(RangeClassValue value);

RangeClass range_classify(int m, int n, int a, int b, long long r);

/* The unique t in [2, min(a,b)] with
   a'(m+n)/(t·min(m,n)) + 1 < r <= a'(m+n)/((t-1)·min(m,n)) + 1,
   a' = max(a,b); requires r in Range B. */
long long t_r(int m, int n, int a, int b, long long r);

/* Parity of floor(a'/(t-1)). */
int epsilon(long long a_prime, long long t);

enum class CaseLabel { A, B, C, D };
enum class Subcase { WideB, NarrowB, None };
enum class BuildStrategy { Pure, Anchored, Rebuilt };

std::string case_label_text(CaseLabel label);
std::string subcase_text(Subcase subcase);
std::string strategy_label_text(BuildStrategy strategy);

struct ConstructionRecipe {
  int m = 1, n = 1, a = 1, b = 1;
  long long r = 0;
  CaseLabel case_label = CaseLabel::A;
  Subcase subcase = Subcase::None;
  long long t = 0;
  int eps = 0;
  long long N = 0;
  bool tail_adjusted = false;
  BuildStrategy strategy = BuildStrategy::Pure;
  /* Pure powers first (canonical order), then the family monomials in
     emission order. */
  std::vector<BigradedMonomial> monomials;
  long long verified_t_min = 0;
  Rational dimension_bound;
  bool bound_met = false;
};

struct ConstructionError : BisyzError {
  std::string failing_condition;
  std::vector<BigradedMonomial> candidates;
  /* The rebuild search ran to completion over its candidate pool. */
  bool search_exhausted = false;
  /* The pool was the complete monomial basis of bidegree (a,b). */
  bool pool_complete = false;
};

struct ConstructionUnavailable : PreconditionError {};

ConstructionRecipe build_W(int m, int n, int a, int b, long long r);

LinearSystem build_V(int m, int n, int a, int b, long long r);

nlohmann::json range_class_json(const RangeClass& range, long long r);
nlohmann::json recipe_json(const ConstructionRecipe& recipe);

}  // namespace bisyz

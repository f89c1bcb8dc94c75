#pragma once

// Reference values shared by the unit tests and the acceptance run.

#include <array>
#include <string>
#include <vector>

#include "pegg/equations.hpp"

namespace golden {

using pegg::ExponentTriple;
using pegg::Term;
using pegg::Word;

// equation skeleton carrying one coefficient; the bases are irrelevant here
inline pegg::OriginalEquation with_coefficient(const ExponentTriple& e, Term which, Word coef) {
  pegg::OriginalEquation eq;
  eq.exps = e;
  eq.d = which == Term::a ? coef : 1;
  eq.e = which == Term::b ? coef : 1;
  eq.f = which == Term::c ? coef : 1;
  return eq;
}

// Minimum multiplier power q (N = p^q) for v_p(coefficient) = 1, 2, ...
struct MultiplierRow {
  ExponentTriple exps;
  Term which;
  std::vector<Word> q;
};

inline const std::vector<MultiplierRow> kMultiplier = {
    {{4, 4, 3}, Term::c, {8, 4}},
    {{5, 5, 3}, Term::c, {5, 10}},
    {{3, 3, 4}, Term::c, {3, 6, 9}},
    {{5, 5, 4}, Term::c, {15, 10, 5}},
    {{3, 3, 5}, Term::c, {9, 3, 12, 6}},
    {{4, 4, 5}, Term::c, {4, 8, 12, 16}},
    {{3, 4, 5}, Term::a, {20, 40}},
    {{3, 4, 5}, Term::b, {15, 30, 45}},
    {{3, 4, 5}, Term::c, {24, 48, 12, 36}},
};

// [log_p D, log_p E, log_p F] for the same rows.
struct ProfileRow {
  ExponentTriple exps;
  Term which;
  std::vector<std::array<Word, 3>> profile;
};

inline const std::vector<ProfileRow> kProfile = {
    {{4, 4, 3}, Term::c, {{2, 2, 3}, {1, 1, 2}}},
    {{5, 5, 3}, Term::c, {{1, 1, 2}, {2, 2, 4}}},
    {{3, 3, 4}, Term::c, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}}},
    {{5, 5, 4}, Term::c, {{3, 3, 4}, {2, 2, 3}, {1, 1, 2}}},
    {{3, 3, 5}, Term::c, {{3, 3, 2}, {1, 1, 1}, {4, 4, 3}, {2, 2, 2}}},
    {{4, 4, 5}, Term::c, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {4, 4, 4}}},
    {{3, 4, 5}, Term::a, {{7, 5, 4}, {14, 10, 8}}},
    {{3, 4, 5}, Term::b, {{5, 4, 3}, {10, 8, 6}, {15, 12, 9}}},
    {{3, 4, 5}, Term::c, {{8, 6, 5}, {16, 12, 10}, {4, 3, 3}, {12, 9, 8}}},
};

// Power of p in the highest-exponent resultant coefficient, {x,x,z} sets.
struct CvtRow {
  Word x, z;
  std::vector<Word> power;
};

inline const std::vector<CvtRow> kCvt = {
    {4, 3, {2, 1}},       {5, 3, {1, 2}},       {3, 4, {1, 2, 3}},
    {5, 4, {3, 2, 1}},    {3, 5, {2, 1, 3, 2}}, {4, 5, {1, 2, 3, 4}},
};

// Smallest {3,3,4} equations with increasing Pegg Value.
struct LadderRow {
  double log2_size;
  Word pegg_value;
  double pegg_power;
  std::string equation;
};

inline const std::vector<LadderRow> kLadder334 = {
    {27.96, 14, 0.1362, "23^3 + 9*14^4 = 71^3"},
    {33.81, 21, 0.1299, "13*21^4 + 163^3 = 190^3"},
    {43.80, 43, 0.1239, "23*43^4 + 1056^3 = 1079^3"},
    {46.92, 111, 0.1448, "14*111^4 + 3595^3 = 3649^3"},
    {56.75, 133, 0.1243, "1157^3 + 139*133^4 = 3558^3"},
    {57.82, 183, 0.1300, "1966^3 + 121*183^4 = 5233^3"},
    {60.68, 194, 0.1252, "126*194^4 + 9071^3 = 9743^3"},
    {66.96, 201, 0.1143, "5906^3 + 8809^3 = 545*201^4"},
    {66.98, 365, 0.1271, "10973^3 + 15902^3 = 301*365^4"},
    {69.24, 399, 0.1248, "12146^3 + 391*399^4 = 22703^3"},
    {72.75, 455, 0.1214, "513*455^4 + 33247^3 = 38872^3"},
    {73.74, 1482, 0.1429, "1609^3 + 239*1482^4 = 104857^3"},
    {73.81, 1638, 0.1447, "97103^3 + 193*1638^4 = 132095^3"},
    {74.25, 2994, 0.1555, "104*2994^4 + 226199^3 = 271127^3"},
    {90.12, 3858, 0.1322, "25031^3 + 1570*3858^4 = 703271^3"},
    {90.16, 5838, 0.1388, "729217^3 + 971*5838^4 = 1148689^3"},
    {90.82, 11598, 0.1487, "341*11598^4 + 3662591^3 = 3809903^3"},
    {92.75, 49476, 0.1681, "7771657^3 + 8824055^3 = 193*49476^4"},
    {99.91, 63742, 0.1597, "2192137^3 + 20440855^3 = 518*63742^4"},
};

}  // namespace golden

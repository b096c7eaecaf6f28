#pragma once

#include <string>
#include <vector>

#include "perverx/functors.hpp"
#include "perverx/perverse.hpp"

namespace perverx::twists {

using perverse::BoundedComplex;
using rep::Module;
using rep::SimpleIndex;

// One class Q of order-ell subgroups with |C_H(Q)/C_H(P)| = 2.
struct TwistClass {
  int catalog_class = 0;     // position among the order-ell subgroup classes
  group::Subgroup q;
  group::Subgroup normalizer;  // N_H(Q)
  group::Subgroup e_prime;     // E'_Q, a complement of P in N_H(Q)
  group::Subgroup e_q;         // E'_Q meet C_H(Q)
  group::Subgroup qe;          // Q x| E'_Q
  std::vector<rep::Elem> chi;  // V_Q as a character of E'_Q, indexed like e_prime.elements
  int eta = 0;
};

struct TwistSpec {
  rep::AlgebraPtr algebra;  // kH
  std::vector<TwistClass> classes;
};

// The classes of T among `subgroup_classes` (in that order), with eta given per subgroup class.
TwistSpec twist_spec(const rep::AlgebraPtr& kh, const std::vector<group::Subgroup>& subgroup_classes,
                     const std::vector<int>& eta);

struct TwistPart {
  int catalog_class = 0;
  Module l_double;  // L''_Q over k(Q x| E'_Q)
  Module l_q;       // L_Q
  rep::Matrix h;    // L_Q -> L'
  rep::Matrix s;    // Ind(s_Q) on L_Q, empty unless eta >= 2
};

struct TwistedImage {
  BoundedComplex complex;
  std::vector<TwistPart> parts;
};
TwistedImage twisted_image(const Module& lprime, const TwistSpec& spec, const SimpleIndex& idx, std::uint64_t seed = 0);

// The image of a bounded complex in the stable module category, as a module (up to projective summands).
Module stable_module(const BoundedComplex& c, const SimpleIndex& idx);

struct StableMatch {
  std::vector<bool> pairs;        // xs[i] against ys[i]
  std::vector<int> bijection;     // xs[i] matches ys[bijection[i]], -1 if none
  bool multiset = false;
  bool all_pairs() const;
};
StableMatch stable_match(const std::vector<BoundedComplex>& xs, const std::vector<BoundedComplex>& ys,
                         const SimpleIndex& idx, std::uint64_t seed = 0);

}  // namespace perverx::twists

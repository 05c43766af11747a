#include "permstab/rep_theory.hpp"

#include <algorithm>

#include "permstab/error.hpp"

namespace permstab {

namespace {

void require_same_source(const PermHomomorphism& a, const PermHomomorphism& b) {
  if (!a.has_finite_source() || !b.has_finite_source()) {
    throw DomainError("operation requires finite-group sources");
  }
  if (!same_source(a, b)) throw DomainError("homomorphisms have different source groups");
}

// Orbits of the given class, in the decomposition's (least point) order.
std::vector<const Orbit*> orbits_of_class(const OrbitDecomposition& d, std::size_t class_id) {
  std::vector<const Orbit*> out;
  for (const auto& orbit : d.orbits) {
    if (orbit.class_id == class_id) out.push_back(&orbit);
  }
  return out;
}

}  // namespace

OrbitDecomposition orbit_decomposition(const PermHomomorphism& hom) {
  const FiniteGroup& g = hom.finite_source();
  const std::size_t n = hom.degree();
  std::vector<Permutation> generator_images;
  for (std::size_t k = 0; k < hom.generator_count(); ++k) {
    generator_images.push_back(hom.generator_image(k));
  }

  OrbitDecomposition result;
  std::vector<char> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    Orbit orbit;
    orbit.base_point = static_cast<int>(start);
    orbit.points.push_back(orbit.base_point);
    seen[start] = 1;
    for (std::size_t head = 0; head < orbit.points.size(); ++head) {
      for (const auto& s : generator_images) {
        const int y = s(orbit.points[head]);
        if (!seen[y]) {
          seen[y] = 1;
          orbit.points.push_back(y);
        }
      }
    }
    std::sort(orbit.points.begin(), orbit.points.end());
    for (std::size_t e = 0; e < g.order(); ++e) {
      if (hom.image(static_cast<int>(e))(orbit.base_point) == orbit.base_point) {
        orbit.stabilizer.members.push_back(static_cast<int>(e));
      }
    }
    orbit.class_id = g.class_index(orbit.stabilizer);
    result.orbits.push_back(std::move(orbit));
  }
  return result;
}

Rational MultiplicityVector::r(std::size_t class_id) const {
  if (class_id >= counts.size()) throw DomainError("subgroup class index out of range");
  if (degree == 0) return Rational(0);
  return make_rational(static_cast<std::int64_t>(counts[class_id]),
                       static_cast<std::int64_t>(degree));
}

MultiplicityVector multiplicity_vector(const PermHomomorphism& hom) {
  const FiniteGroup& g = hom.finite_source();
  MultiplicityVector mv;
  mv.degree = hom.degree();
  mv.counts.assign(g.subgroup_classes().size(), 0);
  for (const auto& orbit : orbit_decomposition(hom).orbits) ++mv.counts[orbit.class_id];
  return mv;
}

ConjugacyResult is_conjugate(const PermHomomorphism& h1, const PermHomomorphism& h2) {
  require_same_source(h1, h2);
  if (h1.degree() != h2.degree()) throw DomainError("homomorphisms have different degrees");
  const FiniteGroup& g = h1.finite_source();

  const auto d1 = orbit_decomposition(h1);
  const auto d2 = orbit_decomposition(h2);
  const std::size_t classes = g.subgroup_classes().size();
  std::vector<std::size_t> m1(classes, 0);
  std::vector<std::size_t> m2(classes, 0);
  for (const auto& o : d1.orbits) ++m1[o.class_id];
  for (const auto& o : d2.orbits) ++m2[o.class_id];
  if (m1 != m2) return ConjugacyResult{false, std::nullopt};

  std::vector<int> p(h1.degree(), -1);
  for (std::size_t c = 0; c < classes; ++c) {
    const auto left = orbits_of_class(d1, c);
    const auto right = orbits_of_class(d2, c);
    for (std::size_t i = 0; i < left.size(); ++i) {
      const Orbit& a = *left[i];
      const Orbit& b = *right[i];
      // Move b's base point to a point whose stabilizer is exactly a's:
      // stab(h2(x) b0) = x stab(b0) x^-1.
      int align = -1;
      for (std::size_t x = 0; x < g.order() && align < 0; ++x) {
        if (conjugate_subgroup(g, b.stabilizer, static_cast<int>(x)) == a.stabilizer) {
          align = static_cast<int>(x);
        }
      }
      if (align < 0) throw InternalError("orbits of one class with non-conjugate stabilizers");
      const int target_base = h2.image(align)(b.base_point);
      for (std::size_t k = 0; k < g.order(); ++k) {
        const int e = static_cast<int>(k);
        p[h1.image(e)(a.base_point)] = h2.image(e)(target_base);
      }
    }
  }
  return ConjugacyResult{true, Permutation(std::move(p))};
}

bool hom_order_leq(const PermHomomorphism& phi, const PermHomomorphism& psi) {
  require_same_source(phi, psi);
  const auto a = multiplicity_vector(phi);
  const auto b = multiplicity_vector(psi);
  for (std::size_t c = 0; c < a.counts.size(); ++c) {
    if (a.counts[c] > b.counts[c]) return false;
  }
  return true;
}

PermHomomorphism rep_subtract(const PermHomomorphism& phi, const PermHomomorphism& rho) {
  require_same_source(phi, rho);
  const auto remove = multiplicity_vector(rho);
  const auto from = orbit_decomposition(phi);
  std::vector<std::size_t> available(remove.counts.size(), 0);
  for (const auto& o : from.orbits) ++available[o.class_id];
  for (std::size_t c = 0; c < available.size(); ++c) {
    if (remove.counts[c] > available[c]) {
      throw DomainError("rep_subtract precondition fails: subtrahend is not below the minuend");
    }
  }
  std::vector<std::size_t> to_remove = remove.counts;
  std::vector<int> kept;
  for (const auto& orbit : from.orbits) {
    if (to_remove[orbit.class_id] > 0) {
      --to_remove[orbit.class_id];
      continue;
    }
    kept.insert(kept.end(), orbit.points.begin(), orbit.points.end());
  }
  return restrict_to_points(phi, kept);
}

}  // namespace permstab

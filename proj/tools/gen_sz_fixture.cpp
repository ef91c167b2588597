// Builds generators of Sz(2^e) acting on the q^2+1 points of its ovoid and
// writes them in group-file format.
//
// The Borel part uses the lower unitriangular matrices
//   S(a,b) = [1 0 0 0; a 1 0 0; a^(1+t)+b a^t 1 0; a^(2+t)+ab+b^t b a 1]
// with t the field automorphism x -> x^(2^((e+1)/2)), together with the torus
// diag(k^(2+t), k^(1+t), k, 1) and the antidiagonal involution. The ovoid is
// the orbit of <e0>. The output is validated by group order and class count.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ekr/algebra.hpp"
#include "ekr/perm.hpp"

using namespace ekr;

namespace {

struct Builder {
  FiniteField F;
  std::uint32_t th(std::uint32_t x) const { return frobenius_theta(F, x); }

  SmallMatrix S(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t a1t = F.mul(a, th(a));
    const std::uint32_t r3 = F.add(F.add(F.mul(F.mul(a, a), th(a)), F.mul(a, b)), th(b));
    return SmallMatrix::from_values(F, 4, {1, 0, 0, 0, a, 1, 0, 0, F.add(a1t, b), th(a), 1, 0, r3, b, a, 1});
  }
  SmallMatrix M(std::uint32_t k) const {
    const std::uint32_t k1t = F.mul(k, th(k));
    return SmallMatrix::from_values(F, 4, {F.mul(k, k1t), 0, 0, 0, 0, k1t, 0, 0, 0, 0, k, 0, 0, 0, 0, 1});
  }
  SmallMatrix T() const { return SmallMatrix::from_values(F, 4, {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0}); }
};

using Point = std::array<std::uint32_t, 4>;

Point normalise(const FiniteField& F, Point v) {
  for (int i = 0; i < 4; ++i)
    if (v[i] != 0) {
      const std::uint32_t inv = F.inv(v[i]);
      for (auto& x : v)
        x = F.mul(x, inv);
      return v;
    }
  throw std::logic_error("zero vector");
}

Point act_on(const SmallMatrix& m, const Point& v) {
  const FiniteField& F = m.field();
  Point out{0, 0, 0, 0};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      out[j] = F.add(out[j], F.mul(v[i], m.raw(i, j)));
  return normalise(F, out);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate Suzuki group generators on the ovoid"};
  unsigned e = 3;
  std::string out = "sz8.grp";
  app.add_option("--e", e, "odd exponent, q = 2^e")->check(CLI::Range(3u, 7u));
  app.add_option("-o,--output", out, "output path");
  CLI11_PARSE(app, argc, argv);
  if (e % 2 == 0) {
    std::cerr << "e must be odd\n";
    return 2;
  }

  Builder B{field_create(2, e)};
  const FiniteField& F = B.F;
  const std::uint32_t q = F.order();

  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d)
          if (!(B.S(a, b) * B.S(c, d) == B.S(F.add(a, c), F.add(F.add(F.mul(a, B.th(c)), b), d)))) {
            std::cerr << "multiplication law fails\n";
            return 1;
          }

  std::vector<SmallMatrix> gens;
  for (std::uint32_t i = 0; i < e; ++i) {
    gens.push_back(B.S(1u << i, 0));
    gens.push_back(B.S(0, 1u << i));
  }
  gens.push_back(B.M(F.primitive_value()));
  gens.push_back(B.T());

  std::map<Point, std::uint32_t> index;
  std::vector<Point> pts{{1, 0, 0, 0}};
  index[pts[0]] = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& g : gens) {
      const Point p = act_on(g, pts[i]);
      if (index.emplace(p, static_cast<std::uint32_t>(pts.size())).second)
        pts.push_back(p);
    }
  if (pts.size() != std::size_t{q} * q + 1) {
    std::cerr << "orbit of <e0> has " << pts.size() << " points, expected " << q * q + 1 << "\n";
    return 1;
  }

  GroupFile file;
  file.degree = static_cast<std::uint32_t>(pts.size());
  // S(1,0), S(0,1), the torus generator and the involution suffice.
  for (const auto& g : {B.S(1, 0), B.S(0, 1), B.M(F.primitive_value()), B.T()}) {
    Permutation perm(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      perm[i] = index.at(act_on(g, pts[i]));
    file.generators.push_back(perm);
  }

  const std::uint64_t expected = std::uint64_t{q} * q * (q - 1) * (std::uint64_t{q} * q + 1);
  if (expected <= kMaxGroupOrder) {
    auto G = close_group(file.degree, file.generators);
    if (G->order() != expected || G->num_classes() != q + 3) {
      std::cerr << "closure has order " << G->order() << " and " << G->num_classes() << " classes\n";
      return 1;
    }
  }

  std::ofstream os(out);
  os << format_group_file(file, "Sz(" + std::to_string(q) + ") on the " + std::to_string(pts.size()) +
                                    " points of its ovoid in PG(3," + std::to_string(q) +
                                    ").\nGenerated by gen_sz_fixture: S(1,0), S(0,1), diag(k^(2+t),k^(1+t),k,1) for the\n"
                                    "primitive k, and the antidiagonal involution. Point 0 is <e0>.");
  std::cout << "wrote " << out << " (degree " << pts.size() << ", order " << expected << ")\n";
  return 0;
}

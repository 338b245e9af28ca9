#include "opk/s3.hpp"

#include "opk/cubic.hpp"

#include <algorithm>
#include <map>

namespace opk {

int Permutation::sign() const {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (img[static_cast<std::size_t>(i)] > img[static_cast<std::size_t>(j)]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

Permutation Permutation::inverse() const {
  Permutation r;
  for (int i = 1; i <= 3; ++i) r.img[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return r;
}

std::string Permutation::str() const {
  static const std::array<const char*, 6> names{"id", "(12)", "(13)", "(23)", "(123)", "(132)"};
  return names[static_cast<std::size_t>(s3_index(*this))];
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  Permutation r;
  for (int i = 1; i <= 3; ++i) r.img[static_cast<std::size_t>(i - 1)] = p(q(i));
  return r;
}

const std::array<Permutation, 6>& s3_elements() {
  static const std::array<Permutation, 6> elems{
      Permutation{{1, 2, 3}}, Permutation{{2, 1, 3}}, Permutation{{3, 2, 1}},
      Permutation{{1, 3, 2}}, Permutation{{2, 3, 1}}, Permutation{{3, 1, 2}}};
  return elems;
}

int s3_index(const Permutation& p) {
  const auto& e = s3_elements();
  for (int k = 0; k < 6; ++k)
    if (e[static_cast<std::size_t>(k)] == p) return k;
  throw S3Error("not a permutation of {1,2,3}");
}

std::string to_string(CubicSpace s) {
  switch (s) {
    case CubicSpace::Magmatic12: return "magmatic-12";
    case CubicSpace::Associative6: return "associative-6";
    case CubicSpace::Polarized12: return "polarized-12";
  }
  return "?";
}

// ---------------------------------------------------------------------------

CubicVector::CubicVector(CubicSpace s, QVector c) : space(s), coords(std::move(c)) {
  if (coords.size() != cubic_dim(s)) throw S3Error("CubicVector: coordinate count does not match space");
}

CubicVector CubicVector::zero(CubicSpace s) {
  return CubicVector(s, QVector::Constant(cubic_dim(s), Rational(0)));
}

CubicVector CubicVector::basis(CubicSpace s, int k) {
  auto v = zero(s);
  if (k < 0 || k >= cubic_dim(s)) throw S3Error("CubicVector: basis index out of range");
  v.coords(k) = Rational(1);
  return v;
}

bool CubicVector::is_zero() const {
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    if (!coords(i).is_zero()) return false;
  return true;
}

static void require_same_space(const CubicVector& a, const CubicVector& b) {
  if (a.space != b.space) throw S3Error("cubic vectors live in different spaces");
}

CubicVector operator+(const CubicVector& a, const CubicVector& b) {
  require_same_space(a, b);
  return CubicVector(a.space, a.coords + b.coords);
}

CubicVector operator-(const CubicVector& a, const CubicVector& b) {
  require_same_space(a, b);
  return CubicVector(a.space, a.coords - b.coords);
}

CubicVector operator*(const Rational& c, const CubicVector& v) {
  QVector r = v.coords;
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) *= c;
  return CubicVector(v.space, r);
}

static int word_index(int i, int j, int k) {
  const Permutation p{{i, j, k}};
  return s3_index(p);
}

CubicVector left_comb(int i, int j, int k) { return CubicVector::basis(CubicSpace::Magmatic12, word_index(i, j, k)); }
CubicVector right_comb(int i, int j, int k) {
  return CubicVector::basis(CubicSpace::Magmatic12, 6 + word_index(i, j, k));
}
CubicVector assoc_word(int i, int j, int k) {
  return CubicVector::basis(CubicSpace::Associative6, word_index(i, j, k));
}
CubicVector associator(int i, int j, int k) { return left_comb(i, j, k) - right_comb(i, j, k); }

// ---------------------------------------------------------------------------

Subspace::Subspace(CubicSpace s) : space_(s), basis_(0, cubic_dim(s)) {}

Subspace::Subspace(CubicSpace s, const QMatrix& rows) : space_(s) {
  if (rows.cols() != cubic_dim(s)) throw S3Error("Subspace: column count does not match space");
  basis_ = rref(rows);
}

Subspace Subspace::span(CubicSpace s, const std::vector<CubicVector>& vectors) {
  QMatrix m(static_cast<Eigen::Index>(vectors.size()), cubic_dim(s));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].space != s) throw S3Error("Subspace::span: vector in a different space");
    m.row(static_cast<Eigen::Index>(i)) = vectors[i].coords.transpose();
  }
  return Subspace(s, m);
}

Subspace Subspace::full(CubicSpace s) {
  return Subspace(s, QMatrix::Identity(cubic_dim(s), cubic_dim(s)));
}

std::vector<CubicVector> Subspace::vectors() const {
  std::vector<CubicVector> out;
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) out.emplace_back(space_, basis_.row(i).transpose());
  return out;
}

bool Subspace::contains(const CubicVector& v) const {
  if (v.space != space_) throw S3Error("Subspace::contains: vector in a different space");
  return row_space_contains(basis_, v.coords.transpose());
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.space() != b.space()) throw S3Error("subspace sum: different spaces");
  return Subspace(a.space(), stack_rows(a.basis(), b.basis()));
}

// ---------------------------------------------------------------------------

ProjectiveParameter::ProjectiveParameter(const Rational& alpha, const Rational& beta) {
  if (alpha.is_zero() && beta.is_zero()) throw S3Error("projective parameter (0:0)");
  if (!alpha.is_zero()) {
    alpha_ = Rational(1);
    beta_ = beta / alpha;
  } else {
    alpha_ = Rational(0);
    beta_ = Rational(1);
  }
}

std::string ProjectiveParameter::str() const { return alpha_.str() + ":" + beta_.str(); }

std::string MultiplicityVector::str() const {
  return "(" + std::to_string(triv) + "," + std::to_string(std) + "," + std::to_string(sgn) + ")";
}

// ---------------------------------------------------------------------------

QMatrix action_matrix(CubicSpace s, const Permutation& sigma) {
  if (s == CubicSpace::Polarized12) {
    static const QMatrix p = polarization_matrix();
    static const QMatrix pinv = inverse(p);
    return pinv * action_matrix(CubicSpace::Magmatic12, sigma) * p;
  }
  const Eigen::Index n = cubic_dim(s);
  QMatrix m = QMatrix::Constant(n, n, Rational(0));
  const auto& e = s3_elements();
  for (int k = 0; k < 6; ++k) {
    const int image = s3_index(sigma * e[static_cast<std::size_t>(k)]);
    m(image, k) = Rational(1);
    if (s == CubicSpace::Magmatic12) m(6 + image, 6 + k) = Rational(1);
  }
  return m;
}

CubicVector s3_act(const Permutation& sigma, const CubicVector& v) {
  return CubicVector(v.space, action_matrix(v.space, sigma) * v.coords);
}

Subspace orbit_span(const std::vector<CubicVector>& generators) {
  if (generators.empty()) throw S3Error("orbit_span: no generators");
  const CubicSpace s = generators.front().space;
  std::vector<CubicVector> all;
  for (const auto& sigma : s3_elements())
    for (const auto& g : generators) {
      if (g.space != s) throw S3Error("orbit_span: generators in different spaces");
      all.push_back(s3_act(sigma, g));
    }
  return Subspace::span(s, all);
}

Subspace orbit_span(const CubicVector& generator) { return orbit_span(std::vector<CubicVector>{generator}); }

bool is_s3_stable(const Subspace& s) {
  for (const auto& sigma : s3_elements()) {
    const QMatrix moved = s.basis() * action_matrix(s.space(), sigma).transpose();
    if (!row_space_contains(s.basis(), moved)) return false;
  }
  return true;
}

static QMatrix projector(CubicSpace s, bool sign_twisted) {
  const Eigen::Index n = cubic_dim(s);
  QMatrix e = QMatrix::Constant(n, n, Rational(0));
  for (const auto& sigma : s3_elements()) {
    const QMatrix a = action_matrix(s, sigma);
    if (sign_twisted && sigma.sign() < 0)
      e -= a;
    else
      e += a;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) /= Rational(6);
  return e;
}

MultiplicityVector isotypic_multiplicities(const Subspace& s) {
  MultiplicityVector m;
  if (s.dim() == 0) return m;
  m.triv = static_cast<int>(rank(s.basis() * projector(s.space(), false).transpose()));
  m.sgn = static_cast<int>(rank(s.basis() * projector(s.space(), true).transpose()));
  const auto rest = s.dim() - m.triv - m.sgn;
  if (rest % 2 != 0) throw S3Error("isotypic_multiplicities: odd standard part (subspace not S3-stable?)");
  m.std = static_cast<int>(rest / 2);
  return m;
}

bool submodule_contains(const Subspace& a, const Subspace& b) {
  if (a.space() != b.space()) throw S3Error("submodule_contains: different spaces");
  return row_space_contains(a.basis(), b.basis());
}

CubicVector AssociatorIdentity::vector() const {
  auto v = CubicVector::zero(CubicSpace::Magmatic12);
  for (int k = 0; k < 6; ++k) {
    v.coords(k) = x[static_cast<std::size_t>(k)];
    v.coords(6 + k) = -x[static_cast<std::size_t>(k)];
  }
  return v;
}

// ---------------------------------------------------------------------------
// Families

namespace {

using Gen = std::vector<CubicVector> (*)(const std::optional<ProjectiveParameter>&);

// [a_i,a_j] a_k and a_i [a_j,a_k] in the associative space
CubicVector bracket_left(int i, int j, int k) { return assoc_word(i, j, k) - assoc_word(j, i, k); }
CubicVector bracket_right(int i, int j, int k) { return assoc_word(i, j, k) - assoc_word(i, k, j); }

CubicVector sum_words(int sign_power) {
  auto v = CubicVector::zero(CubicSpace::Associative6);
  for (int k = 0; k < 6; ++k) {
    const int sg = s3_elements()[static_cast<std::size_t>(k)].sign();
    v.coords(k) = Rational(sign_power ? sg : 1);
  }
  return v;
}

CubicVector twod_first() { return bracket_left(1, 2, 3) + bracket_left(3, 2, 1); }
CubicVector twod_second() { return bracket_right(1, 3, 2) + bracket_right(3, 1, 2); }

AssociatorIdentity identity_from(std::array<Rational, 6> x) { return AssociatorIdentity{x}; }

AssociatorIdentity param_identity(const ProjectiveParameter& p) {
  const Rational& a = p.alpha();
  const Rational& b = p.beta();
  return identity_from({b, b, -a, a - b, a - b, -a});
}

struct FamilyInfo {
  CubicSpace space;
  bool parametric;
  Gen gen;
};

const std::map<std::string, FamilyInfo, std::less<>>& registry() {
  using P = const std::optional<ProjectiveParameter>&;
  static const std::map<std::string, FamilyInfo, std::less<>> r = {
      {"triv-assoc", {CubicSpace::Associative6, false, [](P) { return std::vector{sum_words(0)}; }}},
      {"sign-assoc", {CubicSpace::Associative6, false, [](P) { return std::vector{sum_words(1)}; }}},
      {"2d-1",
       {CubicSpace::Associative6, false,
        [](P) { return std::vector{twod_first(), bracket_left(1, 3, 2) + bracket_left(2, 3, 1)}; }}},
      {"2d-2",
       {CubicSpace::Associative6, false,
        [](P) { return std::vector{bracket_right(1, 2, 3) + bracket_right(3, 2, 1),
                                   bracket_right(1, 3, 2) + bracket_right(2, 3, 1)}; }}},
      {"2d",
       {CubicSpace::Associative6, true,
        [](P p) { return std::vector{p->alpha() * twod_first() + p->beta() * twod_second()}; }}},
      {"cyclic",
       {CubicSpace::Associative6, false,
        [](P) { return std::vector{assoc_word(1, 2, 3) + assoc_word(2, 3, 1) + assoc_word(3, 1, 2)}; }}},
      {"perm-right",
       {CubicSpace::Associative6, false, [](P) { return std::vector{assoc_word(1, 2, 3) - assoc_word(1, 3, 2)}; }}},
      {"perm-left",
       {CubicSpace::Associative6, false, [](P) { return std::vector{assoc_word(1, 2, 3) - assoc_word(2, 1, 3)}; }}},
      {"biperm",
       {CubicSpace::Associative6, false,
        [](P) { return std::vector{assoc_word(1, 2, 3) - assoc_word(1, 3, 2),
                                   assoc_word(1, 2, 3) - assoc_word(2, 1, 3)}; }}},
      {"biantiperm",
       {CubicSpace::Associative6, false,
        [](P) { return std::vector{assoc_word(1, 2, 3) + assoc_word(1, 3, 2),
                                   assoc_word(1, 2, 3) + assoc_word(2, 1, 3)}; }}},
      {"nil3", {CubicSpace::Associative6, false, [](P) { return std::vector{assoc_word(1, 2, 3)}; }}},
      {"assoc", {CubicSpace::Magmatic12, false, [](P) { return std::vector{associator(1, 2, 3)}; }}},
      {"param-associator",
       {CubicSpace::Magmatic12, true, [](P p) { return std::vector{param_identity(*p).vector()}; }}},
      {"tpa", {CubicSpace::Magmatic12, false, [](P p) { return std::vector{family_identity("tpa", p).vector()}; }}},
      {"lieadm",
       {CubicSpace::Magmatic12, false, [](P p) { return std::vector{family_identity("lieadm", p).vector()}; }}},
      {"flexible",
       {CubicSpace::Magmatic12, false, [](P p) { return std::vector{family_identity("flexible", p).vector()}; }}},
      {"prelie-right",
       {CubicSpace::Magmatic12, false,
        [](P p) { return std::vector{family_identity("prelie-right", p).vector()}; }}},
      {"prelie-left",
       {CubicSpace::Magmatic12, false,
        [](P p) { return std::vector{family_identity("prelie-left", p).vector()}; }}},
      {"alternative",
       {CubicSpace::Magmatic12, false,
        [](P) { return std::vector{associator(1, 2, 3) + associator(2, 1, 3),
                                   associator(1, 2, 3) + associator(1, 3, 2)}; }}},
      {"magmatic-nil3",
       {CubicSpace::Magmatic12, false, [](P) { return std::vector{left_comb(1, 2, 3), right_comb(1, 2, 3)}; }}},
  };
  return r;
}

const FamilyInfo& lookup(std::string_view family) {
  const auto& r = registry();
  auto it = r.find(family);
  if (it == r.end()) throw S3Error("unknown relation family '" + std::string(family) + "'");
  return it->second;
}

}  // namespace

std::vector<CubicVector> family_relations(std::string_view family, const std::optional<ProjectiveParameter>& param) {
  const auto& info = lookup(family);
  if (info.parametric && !param) throw S3Error("family '" + std::string(family) + "' needs a parameter");
  if (!info.parametric && param) throw S3Error("family '" + std::string(family) + "' takes no parameter");
  return info.gen(param);
}

bool family_is_parametric(std::string_view family) { return lookup(family).parametric; }
CubicSpace family_space(std::string_view family) { return lookup(family).space; }

std::vector<std::string> family_ids() {
  std::vector<std::string> ids;
  for (const auto& [k, v] : registry()) ids.push_back(k);
  return ids;
}

AssociatorIdentity family_identity(std::string_view family, const std::optional<ProjectiveParameter>& param) {
  const Rational z(0), one(1);
  if (family == "param-associator") {
    if (!param) throw S3Error("family 'param-associator' needs a parameter");
    return param_identity(*param);
  }
  if (param) throw S3Error("family '" + std::string(family) + "' takes no parameter");
  // order: id, (12), (13), (23), (123), (132)
  if (family == "assoc") return identity_from({one, z, z, z, z, z});
  if (family == "tpa") return identity_from({one, one, one, one, one, one});
  if (family == "lieadm") return identity_from({one, -one, -one, -one, one, one});
  if (family == "flexible") return identity_from({one, z, one, z, z, z});
  if (family == "prelie-right") return identity_from({one, z, z, -one, z, z});
  if (family == "prelie-left") return identity_from({one, -one, z, z, z, z});
  throw S3Error("family '" + std::string(family) + "' is not a single associator identity");
}

}  // namespace opk

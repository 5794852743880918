#include "terraced/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "terraced/random.hpp"

namespace terraced {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// a <= b up to a relative slack
bool le(double a, double b, double tol = 1e-9) { return a <= b + tol * (1.0 + std::abs(b)); }

std::string tag(std::size_t i, const char* what)
{
    std::ostringstream os;
    os << "corpus[" << i << "]: " << what;
    return os.str();
}

void interval_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec, SplitMix64& aux)
{
    const std::size_t len = *spec.support_end();
    const std::size_t a = aux.next() % (len + 2);
    const std::size_t b = a + aux.next() % 64;
    const auto r = interval_report(spec, {a, b});
    s.check(std::abs(r.K - r.L / kSqrt2) <= 1e-9 * (1 + r.L), tag(i, "K = L/sqrt2"));
    s.check(le(r.J / 2, r.K) && le(r.K, 2 * r.J), tag(i, "J/2 <= K <= 2J"));

    const std::size_t n = std::min<std::size_t>(b - a + 1, 24);
    const NaturalInterval small(a, a + n - 1);
    std::vector<complex> f(n);
    for (auto& z : f) z = aux.complex_gaussian();
    const double lit = l_form(spec, small, f), gram = l_form_gram(spec, small, f);
    s.check(std::abs(lit - gram) <= 1e-10 * std::max(1.0, lit), tag(i, "Gram form = double sum"));
    if (b > a) s.check(le(L_value(spec, {a + 1, b}), r.L, 1e-10), tag(i, "L monotone in a"));
}

void norm_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec)
{
    const std::size_t S = *spec.support_end();
    const double smax = largest_singular_value(truncate_rhaly(spec, S).matrix);
    const double J0 = J_n_bracket(spec, 0).value.lo;
    const double sup = sigma_profile(spec).sup();
    s.check(le(J0, smax) && le(smax, 2 * kSqrt2 * J0), tag(i, "J0 <= s_max <= 2 sqrt2 J0"));
    s.check(le(sup / kSqrt2, smax) && le(smax, 4 * kSqrt2 * sup), tag(i, "sigma sandwich"));
    const auto nb = norm_bracket(spec);
    s.check(nb.norm.contains(smax, 1e-9 * (1 + smax)), tag(i, "norm bracket contains s_max"));
    const auto jn = J_n_brackets(spec, std::vector<std::size_t>{0, 1, 2, 3, 5, 8, 13, 21, 34, 55});
    for (std::size_t k = 1; k < jn.size(); ++k)
        s.check(jn[k].value.lo <= jn[k - 1].value.hi + 1e-12, tag(i, "J_n nonincreasing"));
}

void bennett_suite(SuiteResult& s, std::size_t i, const SequenceSpec& alpha, SplitMix64& aux)
{
    const auto beta = random_finite_sequence(aux);
    const std::size_t N = std::max(*alpha.support_end(), *beta.support_end());
    const double norm = largest_singular_value(truncate_factorable(alpha, beta, N));
    const auto K2 = bennett_K2(alpha, beta).value;
    s.check(K2.exact(), tag(i, "K2 exact on finite supports"));
    s.check(le(K2.lo, norm) && le(norm, 2 * kSqrt2 * K2.hi), tag(i, "K2 <= ||A|| <= 2 sqrt2 K2"));
}

void eps_l_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec)
{
    const std::size_t S = *spec.support_end();
    const auto sv = singular_values(truncate_rhaly(spec, S).matrix);
    const auto a = [&](std::size_t n) { return n <= sv.size() ? sv[n - 1] : 0.0; };
    std::size_t prev_len = static_cast<std::size_t>(-1);
    for (int g = 1; g <= 16; ++g) {
        const double eps = kSqrt2 * sv[0] * g / 16.0;
        if (!(eps > 0.0)) continue;
        const auto seq = build_eps_l(spec, eps);
        s.check(seq.status == EpsLStatus::finite, tag(i, "finite support gives finite length"));
        for (std::size_t k = 0; k + 1 < seq.c.size(); ++k) {
            const std::size_t c0 = seq.c[k], c1 = seq.c[k + 1];
            s.check(c1 >= c0 + 2, tag(i, "c_{k+1} >= c_k + 2"));
            s.check(L_value(spec, {c0, c1 - 2}) <= eps + 1e-12, tag(i, "L([c_k, c_{k+1}-2]) <= eps"));
            s.check(L_value(spec, {c0, c1 - 1}) > eps - 1e-12, tag(i, "L([c_k, c_{k+1}-1]) > eps"));
        }
        for (const auto& b : approx_number_bounds(seq)) {
            if (b.kind == ApproxBound::upper)
                s.check(le(a(b.index), b.value), tag(i, "a_{2N+2} <= eps/sqrt2"));
            else
                s.check(le(b.value, a(b.index)), tag(i, "a_N >= eps/sqrt2"));
        }
        s.check(seq.length() <= prev_len, tag(i, "length nonincreasing in eps"));
        prev_len = seq.length();
    }
}

void lp_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec)
{
    const std::size_t S = *spec.support_end();
    const auto sv = singular_values(truncate_rhaly(spec, S).matrix);
    const auto prof = sigma_profile(spec);
    for (double p : {1.5, 2.0, 3.0}) {
        long double ap = 0.0L, sp = 0.0L;
        for (double x : sv) ap += std::pow(x, p);
        for (double x : prof.sigma) sp += std::pow(x, p);
        const double a_p = static_cast<double>(ap), s_p = static_cast<double>(sp);
        const double c1 = 5 * std::pow(8.0, p) + 3 * std::pow(2.0, p / 2);
        s.check(le(s_p, c1 * a_p), tag(i, "||sigma||_p^p <= C ||a||_p^p"));
        const double rhs = 7 * std::pow(4 * kSqrt2, p) * s_p + 8 * std::pow(6.0, p) * zeta_bracket(p).hi * s_p;
        s.check(le(a_p, rhs), tag(i, "||a||_p^p <= 7(4 sqrt2 ||sigma||_p)^p + 8 6^p zeta(p) ||sigma||_p^p"));
    }
}

void gram_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec)
{
    const std::size_t N = *spec.support_end() + 3;
    const auto closed = gram_lshape_closed_form(spec, N);
    const auto r = truncate_rhaly(spec, N).matrix;
    const auto prod = r.adjoint() * r;
    s.check((closed - prod).max_abs() <= 1e-12 * std::max(1.0, closed.max_abs()), tag(i, "R*R = L-shaped form"));
}

void operator_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec, SplitMix64& aux)
{
    const std::size_t N = *spec.support_end() + 2;
    std::vector<complex> f(N);
    for (auto& z : f) z = aux.complex_gaussian();
    const auto dense = truncate_rhaly(spec, N).matrix * std::span<const complex>(f);
    const auto fast = apply_rhaly(spec, f);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        err = std::max(err, std::abs(dense[k] - fast[k]));
        scale = std::max(scale, std::abs(dense[k]));
    }
    s.check(err <= 1e-12 * (1 + scale), tag(i, "apply_rhaly = dense matvec"));

    const auto big = singular_values(truncate_rhaly(spec, N + 5).matrix);
    const auto exact = singular_values(truncate_rhaly(spec, N - 2).matrix);
    bool same = true;
    for (std::size_t k = 0; k < exact.size(); ++k) same = same && std::abs(big[k] - exact[k]) <= 1e-10 * (1 + exact[0]);
    for (std::size_t k = exact.size(); k < big.size(); ++k) same = same && big[k] <= 1e-10 * (1 + exact[0]);
    s.check(same, tag(i, "finite rank: sections past the support share singular values"));
}

void hadamard_suite(SuiteResult& s, std::size_t i, SplitMix64& aux)
{
    const auto c = random_finite_sequence(aux, 8, 64);
    const std::size_t N = *c.support_end();
    for (std::size_t k = 0; k < N; ++k) {
        const double bound = 1e-12 * (1 + std::abs(c(k))) * std::sqrt(double(k + 1));
        s.check(eigen_check(c, k, N) <= std::max(bound, 1e-12), tag(i, "T_c v_k = c_k v_k"));
    }
    const auto d = decompose_Tc(c, N);
    s.check(d.residual <= 1e-14, tag(i, "T_c^* = D_c + S A_c"));
    const auto sv1 = singular_values(build_Tc(c, N));
    const auto sv2 = singular_values(reconstruct_Tc_adjoint(d));
    bool same = sv1.size() == sv2.size();
    for (std::size_t k = 0; same && k < sv1.size(); ++k) same = std::abs(sv1[k] - sv2[k]) <= 1e-10 * (1 + sv1[0]);
    s.check(same, tag(i, "singular values of T_c and of the reconstruction"));
}

void sequence_suite(SuiteResult& s, std::size_t i, const SequenceSpec& spec)
{
    std::stringstream buf;
    write_sequence(buf, spec);
    const auto back = read_sequence(buf);
    bool same = true;
    for (std::size_t k = 0; k < *spec.support_end() + 2; ++k) same = same && back(k) == spec(k);
    s.check(same, tag(i, "sequence file round trip"));
    const auto tails = tail_energies(spec, *spec.support_end() + 1);
    bool mono = true;
    for (std::size_t m = 0; m + 1 < tails.size(); ++m) mono = mono && tails[m + 1].hi <= tails[m].hi;
    s.check(mono, tag(i, "tail energies nonincreasing"));
}

} // namespace

bool VerifyReport::ok() const
{
    for (const auto& s : suites)
        if (s.failed) return false;
    return true;
}

VerifyReport run_verify(std::uint64_t seed, std::size_t corpus_size)
{
    VerifyReport rep;
    rep.seed = seed;
    rep.corpus_size = corpus_size;
    const auto corpus = random_corpus(seed, corpus_size);
    SplitMix64 aux(seed ^ 0x5eed5eed5eed5eedULL);

    const auto suite = [](const char* name) {
        SuiteResult s;
        s.name = name;
        return s;
    };
    auto seq = suite("sequences"), op = suite("operator_core"), gram = suite("gram_lshape"),
         iv = suite("interval_sandwich"), nrm = suite("norm_sandwich"), ben = suite("bennett"),
         eps = suite("eps_l_consistency"), lp = suite("lp_comparison"), had = suite("hadamard");
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& spec = corpus[i];
        sequence_suite(seq, i, spec);
        operator_suite(op, i, spec, aux);
        gram_suite(gram, i, spec);
        interval_suite(iv, i, spec, aux);
        norm_suite(nrm, i, spec);
        bennett_suite(ben, i, spec, aux);
        eps_l_suite(eps, i, spec);
        lp_suite(lp, i, spec);
        hadamard_suite(had, i, aux);
    }
    rep.suites = {seq, op, gram, iv, nrm, ben, eps, lp, had};
    return rep;
}

Json to_json(const VerifyReport& r)
{
    Json j;
    j["seed"] = r.seed;
    j["corpus_size"] = r.corpus_size;
    Json suites = Json::array();
    for (const auto& s : r.suites) {
        Json e{{"name", s.name}, {"passed", s.passed}, {"failed", s.failed}};
        if (s.failed) e["first_failure"] = s.first_failure;
        suites.push_back(e);
    }
    j["suites"] = suites;
    j["ok"] = r.ok();
    return j;
}

} // namespace terraced

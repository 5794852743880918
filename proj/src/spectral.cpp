#include "terraced/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "terraced/criteria.hpp"

namespace terraced {

std::size_t max_threads()
{
    if (const char* env = std::getenv("TERRACED_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> singular_values(const DenseMatrix& m)
{
    for (const auto& z : m.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("singular_values: non-finite entry");
    if (m.rows() == 0 || m.cols() == 0) return {};

    Eigen::VectorXd sv;
    if (m.is_real()) {
        Eigen::MatrixXd a(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j).real();
        sv = Eigen::BDCSVD<Eigen::MatrixXd>(a).singularValues();
    } else {
        Eigen::MatrixXcd a(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        sv = Eigen::BDCSVD<Eigen::MatrixXcd>(a).singularValues();
    }
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    for (auto& v : out) v = std::max(v, 0.0);
    return out;
}

double largest_singular_value(const DenseMatrix& m)
{
    const auto sv = singular_values(m);
    return sv.empty() ? 0.0 : sv.front();
}

ApproxNumbers approx_numbers(const SequenceSpec& spec, std::size_t n_max, std::span<const std::size_t> schedule)
{
    if (schedule.empty()) throw std::invalid_argument("approx_numbers: empty schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] == 0) throw std::invalid_argument("approx_numbers: section sizes must be >= 1");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("approx_numbers: schedule must be strictly increasing");
    }
    if (n_max > schedule.front()) throw std::invalid_argument("approx_numbers: n_max exceeds the smallest section");

    ApproxNumbers out;
    out.schedule.assign(schedule.begin(), schedule.end());
    out.singular_values.resize(schedule.size());

    // Independent sections, at most max_threads() in flight, merged by position.
    const std::size_t workers = std::max<std::size_t>(1, std::min(max_threads(), schedule.size()));
    for (std::size_t start = 0; start < schedule.size(); start += workers) {
        std::vector<std::future<std::vector<double>>> jobs;
        const std::size_t stop = std::min(schedule.size(), start + workers);
        for (std::size_t i = start; i < stop; ++i) {
            const std::size_t N = schedule[i];
            jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                      [&spec, N] { return singular_values(truncate_rhaly(spec, N).matrix); }));
        }
        for (std::size_t i = start; i < stop; ++i) out.singular_values[i] = jobs[i - start].get();
    }

    const bool exact = spec.support_end() && *spec.support_end() <= schedule.back();
    for (std::size_t n = 1; n <= n_max; ++n) {
        ApproxNumber a;
        a.index = n;
        for (const auto& sv : out.singular_values) a.values.push_back(sv[n - 1]);
        a.lower_bound = a.values.back();
        if (a.values.size() >= 2) {
            const double prev = a.values[a.values.size() - 2];
            a.stagnated = std::abs(a.lower_bound - prev) < 1e-8 * std::max(std::abs(a.lower_bound), 1e-300);
        }
        a.exact = exact;
        out.numbers.push_back(std::move(a));
    }
    return out;
}

Bracket zeta_bracket(double p)
{
    if (!(p > 1.0)) throw std::invalid_argument("zeta_bracket: p must exceed 1");
    static std::mutex mutex;
    static std::map<double, Bracket> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(p); it != cache.end()) return it->second;
    }
    constexpr std::size_t K = 1000000;
    long double head = 0.0L;
    for (std::size_t k = K - 1; k >= 1; --k) head += std::pow(static_cast<long double>(k), -static_cast<long double>(p));
    const Bracket tail = power_log_series(p, 0.0, static_cast<double>(K));
    const Bracket z = Bracket{static_cast<double>(head) + tail.lo, static_cast<double>(head) + tail.hi}.widened(1e-15);
    std::lock_guard lock(mutex);
    cache.emplace(p, z);
    return z;
}

namespace {

SchattenNorm schatten_from_sections(const SequenceSpec& spec, double q, const ApproxNumbers& sections)
{
    if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("schatten_qnorm: q must lie in (1, inf)");
    SchattenNorm r;
    for (const auto& sv : sections.singular_values) {
        long double acc = 0.0L;
        for (double s : sv) acc += std::pow(static_cast<long double>(s), static_cast<long double>(q));
        r.lower_along_schedule.push_back(static_cast<double>(std::pow(acc, 1.0L / q)));
    }
    r.N = sections.schedule.back();
    const double lo = r.lower_along_schedule.back();

    const auto sigma = schatten_test(spec, q);
    double hi = kInf;
    if (sigma.verdict == Verdict::yes) {
        const double sq = sigma.sum.hi;  // ||sigma||_q^q
        r.sigma_q_upper = std::pow(sq, 1.0 / q);
        const double bound = 7.0 * std::pow(4.0 * std::numbers::sqrt2, q) * sq
                             + 8.0 * std::pow(6.0, q) * zeta_bracket(q).hi * sq;
        hi = std::pow(bound, 1.0 / q) * (1 + 1e-12);
    }
    r.value = {lo, std::max(lo, hi)};
    return r;
}

} // namespace

SchattenNorm schatten_qnorm(const SequenceSpec& spec, double q, const ApproxNumbers& sections)
{
    return schatten_from_sections(spec, q, sections);
}

SchattenNorm schatten_qnorm(const SequenceSpec& spec, double q, std::span<const std::size_t> schedule)
{
    if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("schatten_qnorm: q must lie in (1, inf)");
    return schatten_from_sections(spec, q, approx_numbers(spec, 0, schedule));
}

SpectralReport spectral_report(const SequenceSpec& spec, std::size_t n_max, std::span<const double> q_list,
                               std::span<const std::size_t> schedule)
{
    for (double q : q_list)
        if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("spectral_report: q must lie in (1, inf)");
    SpectralReport rep;
    rep.sequence = spec.describe();
    rep.sections = approx_numbers(spec, n_max, schedule);
    for (double q : q_list) rep.schatten[q] = schatten_from_sections(spec, q, rep.sections);
    return rep;
}

} // namespace terraced

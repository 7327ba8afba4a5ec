#include "devlab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "devlab/error.hpp"
#include "devlab/rng.hpp"

namespace devlab {

CocycleAccumulator::CocycleAccumulator(int d, int k, int cadence)
    : d_(d), k_(k), cadence_(cadence) {
    if (k < 1 || k > d)
        throw Error(ErrorCode::InvalidArgument, "frame size must satisfy 1 <= k <= d");
    frame_.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < k; ++j)
        frame_[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) +
               static_cast<std::size_t>(j)] = 1.0;
    log_norms_.assign(static_cast<std::size_t>(k), 0.0);
}

void CocycleAccumulator::push(const RenormStep& step) {
    step.matrix.transposed_push(frame_, k_);
    teich_time_ += step.log_scale;
    batch_teich_ += step.log_scale;
    ++steps_;
    ++since_flush_;
    bool big = false;
    if (since_flush_ >= cadence_ || batch_teich_ >= kMaxBatchTeich) {
        big = true;
    } else {
        for (double v : frame_)
            if (std::abs(v) > kMaxEntry) { big = true; break; }
    }
    if (big) flush();
}

void CocycleAccumulator::flush() {
    // modified Gram-Schmidt over the k columns; R diagonal feeds log_norms
    for (int j = 0; j < k_; ++j) {
        double* col = frame_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(d_);
        for (int i = 0; i < j; ++i) {
            const double* prev =
                frame_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d_);
            double dp = 0.0;
            for (int a = 0; a < d_; ++a) dp += prev[a] * col[a];
            for (int a = 0; a < d_; ++a) col[a] -= dp * prev[a];
        }
        double nrm = 0.0;
        for (int a = 0; a < d_; ++a) nrm += col[a] * col[a];
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw Error(ErrorCode::NonRecurrent, "cocycle frame degenerated");
        log_norms_[static_cast<std::size_t>(j)] += std::log(nrm);
        for (int a = 0; a < d_; ++a) col[a] /= nrm;
    }
    since_flush_ = 0;
    batch_teich_ = 0.0;
}

void CocycleAccumulator::reset_accumulation() {
    flush();
    std::fill(log_norms_.begin(), log_norms_.end(), 0.0);
    teich_time_ = 0.0;
    steps_ = 0;
}

std::vector<double> CocycleAccumulator::exponents() const {
    if (!(teich_time_ > 0.0))
        throw Error(ErrorCode::InvalidArgument, "no renormalization time accumulated");
    std::vector<double> out(log_norms_);
    for (double& v : out) v /= teich_time_;
    return out;
}

namespace {

struct BatchStats {
    std::vector<double> exponents;
    std::vector<double> stderrs;
};

BatchStats batch_statistics(const std::vector<std::vector<double>>& batch_exponents) {
    std::size_t b = batch_exponents.size();
    std::size_t k = batch_exponents.front().size();
    BatchStats out;
    out.exponents.assign(k, 0.0);
    out.stderrs.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double mean = 0.0;
        for (const auto& e : batch_exponents) mean += e[j];
        mean /= static_cast<double>(b);
        double var = 0.0;
        for (const auto& e : batch_exponents) var += (e[j] - mean) * (e[j] - mean);
        var /= static_cast<double>(b - 1);
        out.exponents[j] = mean;
        out.stderrs[j] = std::sqrt(var / static_cast<double>(b));
    }
    return out;
}

void sort_descending(std::vector<double>& exponents, std::vector<double>& stderrs) {
    std::vector<std::size_t> idx(exponents.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return exponents[a] > exponents[b]; });
    std::vector<double> e(exponents.size()), s(stderrs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        e[i] = exponents[idx[i]];
        s[i] = stderrs[idx[i]];
    }
    exponents = std::move(e);
    stderrs = std::move(s);
}

} // namespace

SpectrumReport estimate_spectrum(const LabeledPermutation& perm, std::uint64_t seed,
                                 std::uint64_t n_steps, int k,
                                 const EstimateOptions& opts) {
    int d = perm.size();
    if (k < 1 || k > d)
        throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= d");
    if (n_steps < 1000)
        throw Error(ErrorCode::InvalidArgument, "need n_steps >= 1e3");
    if (opts.batches < 2 || n_steps < static_cast<std::uint64_t>(opts.batches))
        throw Error(ErrorCode::InvalidArgument, "need at least 2 batches");

    StratumSignature sig = stratum(perm);
    Rng rng(seed);

    for (int attempt = 0;; ++attempt) {
        try {
            IntervalExchange iet = new_iet(perm, rng.simplex(d));
            CocycleAccumulator acc(d, k, opts.cadence);
            for (std::uint64_t w = 0; w < opts.warmup; ++w) {
                auto [next, step] = zorich_step(iet);
                acc.push(step);
                iet = std::move(next);
            }
            acc.reset_accumulation();

            std::uint64_t base = n_steps / static_cast<std::uint64_t>(opts.batches);
            std::uint64_t extra = n_steps % static_cast<std::uint64_t>(opts.batches);
            std::vector<std::vector<double>> batch_exponents;
            double prev_teich = 0.0;
            std::vector<double> prev_logs(static_cast<std::size_t>(k), 0.0);
            for (int b = 0; b < opts.batches; ++b) {
                std::uint64_t len = base + (static_cast<std::uint64_t>(b) < extra ? 1 : 0);
                for (std::uint64_t i = 0; i < len; ++i) {
                    auto [next, step] = zorich_step(iet);
                    acc.push(step);
                    iet = std::move(next);
                }
                acc.flush();
                double dt = acc.teich_time() - prev_teich;
                std::vector<double> be(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j)
                    be[static_cast<std::size_t>(j)] =
                        (acc.log_norms()[static_cast<std::size_t>(j)] -
                         prev_logs[static_cast<std::size_t>(j)]) / dt;
                batch_exponents.push_back(std::move(be));
                prev_teich = acc.teich_time();
                prev_logs = acc.log_norms();
            }

            SpectrumReport report;
            report.exponents = acc.exponents();
            report.stderrs = batch_statistics(batch_exponents).stderrs;
            sort_descending(report.exponents, report.stderrs);
            report.teich_time = acc.teich_time();
            report.steps = acc.steps();
            report.d = d;
            report.g = sig.g;
            report.sigma = sig.sigma;
            std::uint64_t cum = 0;
            for (int b = 0; b < opts.batches; ++b) {
                cum += base + (static_cast<std::uint64_t>(b) < extra ? 1 : 0);
                report.batch_steps.push_back(cum);
            }
            report.batch_exponents = std::move(batch_exponents);
            return report;
        } catch (const Error& e) {
            bool retryable = e.code() == ErrorCode::KeaneViolation ||
                             e.code() == ErrorCode::NonRecurrent;
            if (!retryable || attempt >= opts.max_retries) throw;
        }
    }
}

SpectrumReport merge_reports(const std::vector<SpectrumReport>& reports) {
    if (reports.empty())
        throw Error(ErrorCode::InvalidArgument, "nothing to merge");
    SpectrumReport out = reports.front();
    std::size_t k = out.exponents.size();
    for (const auto& r : reports)
        if (r.exponents.size() != k || r.d != out.d)
            throw Error(ErrorCode::InvalidArgument, "mismatched reports");
    out.teich_time = 0.0;
    out.steps = 0;
    for (std::size_t j = 0; j < k; ++j) {
        double wsum = 0.0, acc = 0.0;
        for (const auto& r : reports) {
            double var = std::max(r.stderrs[j] * r.stderrs[j], 1e-300);
            wsum += 1.0 / var;
            acc += r.exponents[j] / var;
        }
        out.exponents[j] = acc / wsum;
        out.stderrs[j] = 1.0 / std::sqrt(wsum);
    }
    for (const auto& r : reports) {
        out.teich_time += r.teich_time;
        out.steps += r.steps;
    }
    out.batch_steps.clear();
    out.batch_exponents.clear();
    sort_descending(out.exponents, out.stderrs);
    return out;
}

SpectrumStructure full_spectrum_structure(const SpectrumReport& report) {
    int d = report.d;
    if (static_cast<int>(report.exponents.size()) != d)
        throw Error(ErrorCode::InvalidArgument, "full spectrum (k = d) required");
    SpectrumStructure out{};
    out.symmetry_defect = 0.0;
    for (int i = 0; i < d; ++i) {
        double pair = report.exponents[static_cast<std::size_t>(i)] +
                      report.exponents[static_cast<std::size_t>(d - 1 - i)];
        out.symmetry_defect = std::max(out.symmetry_defect, std::abs(pair));
    }
    out.near_zero_count = 0;
    for (int i = 0; i < d; ++i)
        if (std::abs(report.exponents[static_cast<std::size_t>(i)]) <
            3.0 * report.stderrs[static_cast<std::size_t>(i)])
            ++out.near_zero_count;
    out.expected_zero_count = report.sigma - 1;
    out.top_gap = std::abs(report.exponents.front() - 1.0);
    return out;
}

namespace {

std::vector<std::size_t> positive_indices(const SpectrumReport& report) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < report.exponents.size(); ++i)
        if (report.exponents[i] > 0.0 &&
            report.exponents[i] >= 3.0 * report.stderrs[i])
            out.push_back(i);
    return out;
}

} // namespace

std::vector<double> predict_deviation_exponents(const SpectrumReport& report) {
    if (report.exponents.empty())
        throw Error(ErrorCode::InvalidArgument, "empty spectrum");
    double top = report.exponents.front();
    std::vector<double> out;
    for (std::size_t i : positive_indices(report)) out.push_back(report.exponents[i] / top);
    return out;
}

std::vector<double> sobolev_order_report(const SpectrumReport& report) {
    if (report.exponents.empty())
        throw Error(ErrorCode::InvalidArgument, "empty spectrum");
    double top = report.exponents.front();
    std::vector<double> out;
    for (std::size_t i : positive_indices(report))
        out.push_back(1.0 - report.exponents[i] / top);
    return out;
}

} // namespace devlab

#include "datesat/sampler.hpp"

#include <cmath>
#include <random>

namespace datesat {
namespace {

class Generator {
 public:
  Generator(const SamplerConfig& cfg, std::uint64_t index)
      : cfg_(cfg), rng_(seed(cfg.seed, index)) {}

  Problem run() {
    Problem p;
    for (int i = 1; i <= cfg_.date_vars; ++i) p.declarations.push_back({"D" + std::to_string(i), Sort::Date});
    const int n = static_cast<int>(uniform(cfg_.min_constraints, cfg_.max_constraints));
    for (int i = 0; i < n; ++i) p.constraints.push_back(boolean(0));
    p.coverage_tags.push_back("sampled");
    if (days_only_seen_) p.coverage_tags.push_back("day_arithmetic");
    return p;
  }

 private:
  static std::mt19937_64 seed(std::uint64_t s, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
  }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  std::size_t pick(int depth, std::initializer_list<double> leaves, std::initializer_list<double> nodes) {
    std::vector<double> w(leaves);
    const double scale = depth >= cfg_.max_depth ? 0 : std::pow(cfg_.depth_decay, depth);
    for (double x : nodes) w.push_back(x * scale);
    double total = 0;
    for (double x : w) total += x;
    if (total <= 0) return 0;
    return std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng_);
  }

  ExprPtr boolean(int depth) {
    const auto& w = cfg_.weights;
    switch (pick(depth, {w.compare}, {w.and_, w.or_, w.not_})) {
      case 1: {
        ExprPtr a = boolean(depth + 1);
        return Expr::and_(a, boolean(depth + 1));
      }
      case 2: {
        ExprPtr a = boolean(depth + 1);
        return Expr::or_(a, boolean(depth + 1));
      }
      case 3: return Expr::not_(boolean(depth + 1));
      default: {
        static constexpr CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne};
        const CmpOp op = ops[uniform(0, 5)];
        ExprPtr a = date(depth + 1);
        return Expr::date_cmp(op, a, date(depth + 1));
      }
    }
  }

  ExprPtr date(int depth) {
    const auto& w = cfg_.weights;
    switch (pick(depth, {w.var, w.literal}, {w.add, w.sub})) {
      case 1: {
        const std::int64_t lo = to_epoch_days(cfg_.literal_lo);
        const std::int64_t hi = to_epoch_days(cfg_.literal_hi);
        return Expr::date_lit(from_epoch_days(uniform(lo, hi)));
      }
      case 2: {
        ExprPtr a = date(depth + 1);
        return Expr::date_add_period(a, period(depth + 1));
      }
      case 3: {
        ExprPtr a = date(depth + 1);
        return Expr::date_sub_period(a, period(depth + 1));
      }
      default: return Expr::date_var("D" + std::to_string(uniform(1, cfg_.date_vars)));
    }
  }

  ExprPtr period(int depth) {
    const auto& w = cfg_.weights;
    switch (pick(depth, {w.period_literal}, {w.period_add, w.period_scale})) {
      case 1: {
        ExprPtr a = period(depth + 1);
        return Expr::period_add(a, period(depth + 1));
      }
      case 2: {
        const std::int64_t k = uniform(1, cfg_.max_scale);
        return Expr::period_scale(k, period(depth + 1));
      }
      default: {
        if (chance(cfg_.day_only)) {
          days_only_seen_ = true;
          return Expr::period_lit({0, 0, uniform(-cfg_.max_days, cfg_.max_days)});
        }
        return Expr::period_lit({uniform(-cfg_.max_years, cfg_.max_years),
                                 uniform(-cfg_.max_months, cfg_.max_months),
                                 uniform(-cfg_.max_days, cfg_.max_days)});
      }
    }
  }

  const SamplerConfig& cfg_;
  std::mt19937_64 rng_;
  bool days_only_seen_ = false;
};

}  // namespace

Problem sample_problem(const SamplerConfig& cfg, std::uint64_t index) {
  return Generator(cfg, index).run();
}

std::vector<Problem> sample_suite(const SamplerConfig& cfg, std::size_t count) {
  std::vector<Problem> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_problem(cfg, i));
  return out;
}

}  // namespace datesat

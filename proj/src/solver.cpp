#include "cmlj/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <complex>
#include <future>
#include <map>
#include <thread>

#include "cmlj/errors.hpp"
#include "cmlj/modular.hpp"
#include "cmlj/mpcomplex.hpp"

namespace cmlj {

namespace {

using cd = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
double unit_double(std::uint64_t& s) {
    return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

// ----------------------------------------------------------- compiled system

struct CTerm {
    cd coeff;
    // (variable, exponent) pairs
    std::vector<std::pair<std::uint8_t, std::uint8_t>> vars;
};
using CPoly = std::vector<CTerm>;

CPoly compile_poly(const MultiPoly& p) {
    CPoly out;
    for (const auto& [e, c] : p.terms()) {
        CTerm t;
        t.coeff = cd(c.get_d(), 0.0);
        for (size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) t.vars.emplace_back(static_cast<std::uint8_t>(v), e[v]);
        out.push_back(std::move(t));
    }
    return out;
}

cd eval_cpoly(const CPoly& p, const std::vector<cd>& x) {
    cd acc = 0.0;
    for (const auto& t : p) {
        cd m = t.coeff;
        for (auto [v, e] : t.vars) {
            cd b = x[v];
            for (int k = 1; k < e; ++k) b *= x[v];
            m *= b;
        }
        acc += m;
    }
    return acc;
}

struct Compiled {
    std::vector<CPoly> F;
    std::vector<std::vector<CPoly>> J;
    int n = 0;
};

Compiled compile(const PolySystem& sys) {
    Compiled c;
    c.n = static_cast<int>(sys.unknowns.size());
    for (const auto& eq : sys.equations) c.F.push_back(compile_poly(eq));
    c.J.resize(sys.jacobian.size());
    for (size_t i = 0; i < sys.jacobian.size(); ++i)
        for (const auto& d : sys.jacobian[i]) c.J[i].push_back(compile_poly(d));
    return c;
}

// mpfr-precision compiled copy: rational coefficients converted once
struct MTerm {
    MpComplex coeff;
    std::vector<std::pair<std::uint8_t, std::uint8_t>> vars;
};
using MPoly = std::vector<MTerm>;

struct MCompiled {
    std::vector<MPoly> F;
    std::vector<std::vector<MPoly>> J;
    mpfr_prec_t prec = 256;
    int n = 0;
};

MPoly compile_poly_mp(const MultiPoly& p, mpfr_prec_t prec) {
    MPoly out;
    for (const auto& [e, c] : p.terms()) {
        MTerm t;
        t.coeff = MpComplex(prec);
        mpfr_set_q(t.coeff.re(), c.get_mpq_t(), MPFR_RNDN);
        for (size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) t.vars.emplace_back(static_cast<std::uint8_t>(v), e[v]);
        out.push_back(std::move(t));
    }
    return out;
}

MCompiled compile_mp(const PolySystem& sys, mpfr_prec_t prec) {
    MCompiled c;
    c.prec = prec;
    c.n = static_cast<int>(sys.unknowns.size());
    for (const auto& eq : sys.equations) c.F.push_back(compile_poly_mp(eq, prec));
    c.J.resize(sys.jacobian.size());
    for (size_t i = 0; i < sys.jacobian.size(); ++i)
        for (const auto& d : sys.jacobian[i]) c.J[i].push_back(compile_poly_mp(d, prec));
    return c;
}

MpComplex eval_mpoly(const MPoly& p, const std::vector<MpComplex>& x, mpfr_prec_t prec) {
    MpComplex acc(prec);
    for (const auto& t : p) {
        MpComplex m = t.coeff;
        for (auto [v, e] : t.vars) {
            MpComplex b = x[v];
            for (int k = 1; k < e; ++k) b = b * x[v];
            m = m * b;
        }
        acc += m;
    }
    return acc;
}

// roots of the unknown coordinates in double precision, for the cheap
// degeneracy prefilter; coefficient blocks are resolved by Durand-Kerner
std::vector<cd> prefilter_roots(const PolySystem& sys, const std::vector<cd>& x) {
    std::vector<cd> roots;
    for (const auto& blk : sys.blocks) {
        if (blk.size == 0) continue;
        if (!blk.coeff_form) {
            for (int i = 0; i < blk.size; ++i) roots.push_back(x[blk.first_unknown + i]);
            continue;
        }
        // monic poly x^m + c1 x^{m-1} + ... + cm
        int m = blk.size;
        std::vector<cd> coef(m + 1);
        coef[m] = 1.0;
        for (int i = 0; i < m; ++i) coef[m - 1 - i] = x[blk.first_unknown + i];
        if (m == 1) {
            roots.push_back(-coef[0]);
            continue;
        }
        std::vector<cd> r(m);
        for (int i = 0; i < m; ++i) r[i] = std::polar(0.7, 2.0 * M_PI * i / m + 0.4);
        for (int it = 0; it < 200; ++it) {
            double worst = 0;
            for (int i = 0; i < m; ++i) {
                cd p = coef[m];
                for (int k = m - 1; k >= 0; --k) p = p * r[i] + coef[k];
                cd q = 1.0;
                for (int jj = 0; jj < m; ++jj)
                    if (jj != i) q *= (r[i] - r[jj]);
                if (q == cd(0.0)) {
                    r[i] += cd(1e-4, 2e-4);
                    worst = 1;
                    continue;
                }
                cd d = p / q;
                r[i] -= d;
                worst = std::max(worst, std::abs(d));
            }
            if (worst < 1e-12) break;
        }
        for (auto& rr : r) roots.push_back(rr);
    }
    return roots;
}

bool prefilter_ok(const PolySystem& sys, const std::vector<cd>& x, double dtol) {
    const cd k = x[0], lam = x[1];
    if (std::abs(k) < dtol) return false;
    if (std::abs(lam) < dtol || std::abs(lam - cd(1.0)) < dtol) return false;
    std::vector<cd> roots = prefilter_roots(sys, x);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (std::abs(roots[i]) < dtol || std::abs(roots[i] - cd(1.0)) < dtol) return false;
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) < dtol * (1.0 + std::abs(roots[i])))
                return false;
    }
    return true;
}

// ------------------------------------------------------ double-stage Newton

// solve A x = b in place; returns false when the pivot collapses
bool lu_solve(std::vector<std::vector<cd>>& A, std::vector<cd>& b) {
    int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(A[col][col]);
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(A[r][col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-250) return false;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            cd f = A[r][col] / A[col][col];
            if (f == cd(0.0)) continue;
            for (int k = col; k < n; ++k) A[r][k] -= f * A[col][k];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        cd s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r][k] * b[k];
        b[r] = s / A[r][r];
    }
    return true;
}

double res_norm(const Compiled& c, const std::vector<cd>& x, std::vector<cd>& f) {
    double s = 0;
    for (int i = 0; i < static_cast<int>(c.F.size()); ++i) {
        f[i] = eval_cpoly(c.F[i], x);
        s += std::norm(f[i]);
    }
    return std::sqrt(s);
}

bool newton_scan(const Compiled& c, std::vector<cd>& x, int max_iters) {
    int n = c.n;
    std::vector<cd> f(n), rhs(n);
    std::vector<std::vector<cd>> J(n, std::vector<cd>(n));
    double fn = res_norm(c, x, f);
    for (int it = 0; it < max_iters; ++it) {
        if (fn < 1e-11) return true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) J[i][j] = eval_cpoly(c.J[i][j], x);
        rhs = f;
        auto A = J;
        if (!lu_solve(A, rhs)) return false;
        // damped step with residual line search
        double t = 1.0;
        bool accepted = false;
        for (int h = 0; h < 10; ++h, t *= 0.5) {
            std::vector<cd> y(n);
            double big = 0;
            for (int i = 0; i < n; ++i) {
                y[i] = x[i] - t * rhs[i];
                big = std::max(big, std::abs(y[i]));
            }
            if (big > 1e8 || !std::isfinite(big)) continue;
            std::vector<cd> fy(n);
            double fy_n = res_norm(c, y, fy);
            if (fy_n < fn * (1.0 - 0.25 * t)) {
                x = std::move(y);
                f = std::move(fy);
                fn = fy_n;
                accepted = true;
                break;
            }
        }
        if (!accepted) return fn < 1e-9;
    }
    return fn < 1e-9;
}

// ------------------------------------------------------- mpfr-stage Newton

bool lu_solve_mp(std::vector<std::vector<MpComplex>>& A, std::vector<MpComplex>& b) {
    int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = A[col][col].abs_log2();
        for (int r = col + 1; r < n; ++r) {
            double v = A[r][col].abs_log2();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < -100000) return false;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col].is_zero()) continue;
            MpComplex f = A[r][col] / A[col][col];
            for (int k = col; k < n; ++k) A[r][k] -= f * A[col][k];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        MpComplex s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r][k] * b[k];
        b[r] = s / A[r][r];
    }
    return true;
}

// returns log2 of the final correction; +inf-ish when diverged
double newton_polish(const MCompiled& mc, std::vector<MpComplex>& x, int iters,
                     double* first_corr_log2 = nullptr) {
    int n = mc.n;
    mpfr_prec_t prec = mc.prec;
    double last = 1e18;
    for (int it = 0; it < iters; ++it) {
        std::vector<MpComplex> f(n);
        for (int i = 0; i < n; ++i) f[i] = eval_mpoly(mc.F[i], x, prec);
        std::vector<std::vector<MpComplex>> J(n, std::vector<MpComplex>(n, MpComplex(prec)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) J[i][j] = eval_mpoly(mc.J[i][j], x, prec);
        if (!lu_solve_mp(J, f)) return 1e18;
        double corr = -1e18, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            corr = std::max(corr, f[i].abs_log2());
            scale = std::max(scale, x[i].abs_log2());
            x[i] -= f[i];
        }
        double rel = corr - std::max(0.0, scale);
        if (first_corr_log2 && it == 0) *first_corr_log2 = rel;
        last = rel;
        if (rel < -static_cast<double>(prec) + 24) return last;
        if (it >= 2 && rel > -20.0) return last; // not contracting
    }
    return last;
}

// -------------------------------------------------------------- certification

struct RawSolution {
    std::vector<cd> x;
};

std::optional<SolutionRecord> certify_point(const PolySystem& sys,
                                            const std::vector<MpComplex>& x,
                                            mpfr_prec_t prec, const SolverConfig& cfg,
                                            double corr_log2) {
    int n = static_cast<int>(sys.unknowns.size());
    Assignment point;
    point.reserve(n);
    long rad_exp = static_cast<long>(std::min(0.0, corr_log2)) + 4;
    for (int i = 0; i < n; ++i) {
        CBall b = x[i].to_ball();
        double sc = std::max(0.0, x[i].abs_log2());
        b.add_error_pow2(rad_exp + static_cast<long>(sc));
        b.add_error_pow2(-static_cast<long>(prec) + 8 + static_cast<long>(sc));
        point.push_back(std::move(b));
    }
    // residual certificate
    std::vector<CBall> res = residual(sys, point);
    UReal norm2;
    for (const auto& r : res) {
        UReal a = r.abs_ub();
        norm2 += a * a;
    }
    mpfr_sqrt(norm2.raw(), norm2.raw(), MPFR_RNDU);
    if (!(norm2 < UReal::pow2(cfg.newton_tol_log2))) return std::nullopt;

    SolutionRecord rec;
    rec.assignment = point;
    rec.residual_norm = CBall(prec);
    rec.residual_norm.add_error(norm2);
    rec.D = sys.D;
    rec.variant = sys.variant;
    rec.d2_q = sys.d2_q;
    rec.d2_split = sys.d2_split;
    rec.system_name = sys.name();
    rec.lambda = point[sys.lambda_index()];

    // degeneracy filters plus the square condition and census
    try {
        HFunction h = assemble_h(sys, point);
        if (!verify_square_condition(h)) return std::nullopt;
        if (!census_matches(ramification_census(h), sys.D)) return std::nullopt;
        rec.j_value = j_of_lambda(rec.lambda);
    } catch (const DegenerateSolution&) {
        return std::nullopt;
    } catch (const LambdaDegenerate&) {
        return std::nullopt;
    } catch (const PrecisionExhausted&) {
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
    return rec;
}

} // namespace

std::vector<SolutionGroup> dedup(const std::vector<SolutionRecord>& records,
                                 long dedup_tol_log2) {
    UReal tol = UReal::pow2(dedup_tol_log2);
    // greedy multiset match on (lambda, critical points)
    auto same_solution = [&](const SolutionRecord& a, const SolutionRecord& b) {
        if (a.system_name != b.system_name) return false;
        if (!(a.lambda.mid_dist_ub(b.lambda) <= tol)) return false;
        if (a.assignment.size() != b.assignment.size()) return false;
        if (!(a.assignment[0].mid_dist_ub(b.assignment[0]) <= tol)) return false; // k
        // compare the unknown coordinates as multisets (root blocks may permute)
        std::vector<bool> used(b.assignment.size(), false);
        for (size_t i = 2; i < a.assignment.size(); ++i) {
            bool hit = false;
            for (size_t j = 2; j < b.assignment.size(); ++j) {
                if (used[j]) continue;
                if (a.assignment[i].mid_dist_ub(b.assignment[j]) <= tol) {
                    used[j] = true;
                    hit = true;
                    break;
                }
            }
            if (!hit) return false;
        }
        return true;
    };

    std::vector<SolutionRecord> unique;
    for (const auto& r : records) {
        bool dup = false;
        for (const auto& u : unique)
            if (same_solution(r, u)) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(r);
    }

    // group by S3 orbit of lambda with agreeing j
    std::vector<SolutionGroup> groups;
    std::vector<bool> grouped(unique.size(), false);
    for (size_t i = 0; i < unique.size(); ++i) {
        if (grouped[i]) continue;
        SolutionGroup g;
        g.rep = unique[i];
        g.members.push_back(unique[i]);
        grouped[i] = true;
        auto orbit = s3_orbit(unique[i].lambda);
        for (size_t j = i + 1; j < unique.size(); ++j) {
            if (grouped[j]) continue;
            if (unique[i].j_value.certifiably_distinct(unique[j].j_value)) continue;
            bool in_orbit = false;
            for (const auto& o : orbit)
                if (!(o.certifiably_distinct(unique[j].lambda))) in_orbit = true;
            if (in_orbit) {
                g.members.push_back(unique[j]);
                grouped[j] = true;
            }
        }
        groups.push_back(std::move(g));
    }
    std::sort(groups.begin(), groups.end(), [](const SolutionGroup& a, const SolutionGroup& b) {
        if (!CBall::mid_less(a.rep.j_value, b.rep.j_value) &&
            !CBall::mid_less(b.rep.j_value, a.rep.j_value))
            return CBall::mid_less(a.rep.lambda, b.rep.lambda);
        return CBall::mid_less(a.rep.j_value, b.rep.j_value);
    });
    return groups;
}

std::vector<SolutionGroup> solve(const PolySystem& sys, const SolverConfig& cfg) {
    Compiled comp = compile(sys);
    int n = comp.n;
    int starts = cfg.effective_starts(sys.D);

    // starts are independent; per-start RNG keeps the result set independent
    // of the thread layout (a deterministic sort follows the merge)
    auto run_range = [&](int lo, int hi) {
        std::vector<std::vector<cd>> local;
        for (int s = lo; s < hi; ++s) {
            std::uint64_t rng = cfg.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL +
                                static_cast<std::uint64_t>(s);
            splitmix64(rng);
            std::vector<cd> x(n);
            for (int i = 0; i < n; ++i) {
                double which = unit_double(rng);
                double th = 2.0 * M_PI * unit_double(rng);
                double r;
                if (i == 1) {
                    // lambda start: annulus / unit circle / real segment
                    if (which < 1.0 / 3.0) {
                        r = 0.1 + 9.9 * unit_double(rng);
                        x[i] = std::polar(r, th);
                    } else if (which < 2.0 / 3.0) {
                        r = 0.8 + 0.4 * unit_double(rng);
                        x[i] = std::polar(r, th);
                    } else {
                        // wide enough for every real-quadratic lambda in the tables
                        x[i] = cd(-40.0 + 80.0 * unit_double(rng),
                                  1e-3 * (unit_double(rng) - 0.5));
                    }
                } else {
                    // log-uniform radius reaches the large coordinates of the
                    // real-quadratic solutions without starving the unit scale
                    r = 0.1 * std::exp(std::log(500.0) * unit_double(rng));
                    x[i] = std::polar(r, th);
                }
            }
            if (newton_scan(comp, x, cfg.max_iters)) local.push_back(x);
        }
        return local;
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    int chunks = static_cast<int>(std::min<unsigned>(hw, 16));
    std::vector<std::future<std::vector<std::vector<cd>>>> futs;
    int per = (starts + chunks - 1) / chunks;
    for (int c = 0; c < chunks; ++c) {
        int lo = c * per, hi = std::min(starts, (c + 1) * per);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, run_range, lo, hi));
    }
    std::vector<std::vector<cd>> found;
    for (auto& f : futs) {
        auto part = f.get();
        found.insert(found.end(), part.begin(), part.end());
    }
    const bool dbg = std::getenv("CMLJ_DEBUG") != nullptr;
    auto tick = std::chrono::steady_clock::now();
    auto lap = [&](const char* what, size_t count) {
        if (!dbg) return;
        auto now = std::chrono::steady_clock::now();
        std::fprintf(stderr, "[solve %s] %s: %zu (%.2fs)\n", sys.name().c_str(), what,
                     count, std::chrono::duration<double>(now - tick).count());
        tick = now;
    };
    lap("scan hits", found.size());

    // cheap degeneracy prefilter kills the degenerate solution continua
    {
        std::vector<std::vector<cd>> keep;
        for (auto& x : found)
            if (prefilter_ok(sys, x, cfg.degeneracy_tol)) keep.push_back(std::move(x));
        found = std::move(keep);
    }
    lap("prefilter survivors", found.size());

    // deterministic coarse clustering of scan results
    std::sort(found.begin(), found.end(), [](const std::vector<cd>& a, const std::vector<cd>& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
            if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
        }
        return false;
    });
    auto close = [](const std::vector<cd>& a, const std::vector<cd>& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i] - b[i]) > 1e-6 * (1.0 + std::abs(a[i]))) return false;
        return true;
    };
    std::vector<std::vector<cd>> reps;
    for (const auto& x : found) {
        bool dup = false;
        for (const auto& r : reps)
            if (close(x, r)) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(x);
    }
    lap("coarse reps", reps.size());
    std::vector<std::vector<cd>>& survivors = reps;


    // refine and certify
    mpfr_prec_t prec = cfg.precision;
    MCompiled mc = compile_mp(sys, prec + 32);
    std::vector<SolutionRecord> records;
    for (const auto& r : survivors) {
        std::vector<MpComplex> x;
        x.reserve(n);
        for (const auto& c : r) x.push_back(MpComplex::from_cd(c, prec + 32));
        double corr = newton_polish(mc, x, 25);
        if (corr > -static_cast<double>(prec) / 2) continue; // not converging
        auto rec = certify_point(sys, x, prec, cfg, corr);
        if (rec) records.push_back(std::move(*rec));
    }
    lap("certified records", records.size());
    if (records.empty())
        throw NoSolutionsFound("solve: no certified solutions for " + sys.name());
    auto out = dedup(records, cfg.dedup_tol_log2);
    lap("groups", out.size());
    return out;
}

SolutionRecord refine(const PolySystem& sys, const SolutionRecord& record,
                      mpfr_prec_t target_precision) {
    int n = static_cast<int>(sys.unknowns.size());
    if (static_cast<int>(record.assignment.size()) != n)
        throw DomainError("refine: record does not match system");
    mpfr_prec_t wp = target_precision + 32;
    MCompiled mc = compile_mp(sys, wp);
    std::vector<MpComplex> x;
    x.reserve(n);
    for (const auto& b : record.assignment) x.push_back(MpComplex::from_ball_mid(b, wp));
    double first = 0;
    double corr = newton_polish(mc, x, 40, &first);
    if (first > -8.0 || corr > -static_cast<double>(target_precision) / 2)
        throw DivergedDuringRefine("refine: Newton contraction failed (correction 2^" +
                                   std::to_string(static_cast<long>(corr)) + ")");
    SolverConfig cfg;
    cfg.precision = target_precision;
    cfg.newton_tol_log2 = -static_cast<long>(target_precision) / 2;
    auto rec = certify_point(sys, x, target_precision, cfg, corr);
    if (!rec) throw DivergedDuringRefine("refine: certification failed after polish");
    return *rec;
}

} // namespace cmlj

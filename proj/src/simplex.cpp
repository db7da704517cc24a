#include "deltaef/simplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltaef {

namespace {

using Terms = std::vector<std::pair<int, Rat>>;

Terms normalize_terms(const Terms& in, int num_vars) {
  std::map<int, Rat> acc;
  for (const auto& [v, c] : in) {
    if (v < 0 || v >= num_vars) throw std::invalid_argument("lp row references unknown variable");
    acc[v] += c;
  }
  Terms out;
  for (auto& [v, c] : acc)
    if (c != 0) out.emplace_back(v, c);
  return out;
}

}  // namespace

struct LpContext::Impl {
  // Original model, rows normalized.
  int orig_vars = 0;
  std::vector<LpRow> rows;
  std::vector<bool> parametric_flag;
  std::vector<int> parametric;
  std::vector<Rat> rhs0;       // construction-time rhs per row
  std::vector<Rat> rhs_work;   // rhs after presolve replay

  // Presolve log.
  struct RhsOp { int target; int source; Rat factor; };
  struct ElimRecord { int var; int row; Rat coeff; Terms terms; };
  std::vector<RhsOp> rhs_ops;
  std::vector<ElimRecord> elims;                 // applied order
  std::vector<int> zero_rows;                    // emptied rows, re-checked per replay by sense
  std::vector<std::pair<int, Rat>> sign_checks;  // (row, coeff): rhs/coeff >= 0 required
  std::vector<int> active_rows;
  std::vector<bool> var_nonneg;
  std::vector<bool> var_gone;
  std::vector<bool> taint;  // rhs depends on a parametric row

  // Standard form: min c x, A x = b, x >= 0 over columns `cols`.
  int m = 0;
  int n_total = 0;
  std::vector<Terms> cols;          // entries (active-row slot, value)
  std::vector<int> col_owner;       // model variable or -1
  std::vector<bool> col_negated;
  std::vector<bool> is_artificial;
  std::vector<int> art_of_row;
  std::vector<Rat> b;

  // Simplex state.
  std::vector<int> basic;    // slot -> std var
  std::vector<int> pos_of;   // std var -> slot or -1
  std::vector<Rat> xb;
  bool has_basis = false;
  long pivots = 0;

  struct LuFactor {
    std::vector<int> prow, pcol;
    std::vector<Rat> pivval;
    std::vector<Terms> lcol;  // (row, multiplier) below the pivot
    std::vector<Terms> urow;  // (slot, value) right of the pivot
  };
  LuFactor lu;
  struct Eta { int slot; Rat wr; Terms w; };
  std::vector<Eta> etas;

  // ---------- presolve ----------

  void presolve() {
    const int nr = static_cast<int>(rows.size());
    std::vector<std::map<int, Rat>> work(nr);
    std::vector<bool> row_alive(nr, true);
    for (int r = 0; r < nr; ++r)
      for (const auto& [v, c] : rows[r].terms) work[r][v] = c;
    rhs_work = rhs0;
    taint = parametric_flag;

    std::vector<std::set<int>> var_rows(orig_vars);
    for (int r = 0; r < nr; ++r)
      for (const auto& [v, c] : work[r]) var_rows[v].insert(r);

    auto drop_row = [&](int r) {
      for (const auto& [v, c] : work[r]) var_rows[v].erase(r);
      work[r].clear();
      row_alive[r] = false;
    };

    auto fold_singletons = [&] {
      bool changed = true;
      while (changed) {
        changed = false;
        for (int r = 0; r < nr; ++r) {
          if (!row_alive[r] || work[r].size() != 1) continue;
          const int v = work[r].begin()->first;
          const Rat a = work[r].begin()->second;
          if (rows[r].sense == RowSense::eq) {
            // Pin the variable; its sign requirement is re-checked per replay.
            if (var_nonneg[v]) sign_checks.emplace_back(r, a);
            eliminate(v, r, a, work, row_alive, var_rows);
            changed = true;
          } else if (!taint[r] && rhs_work[r] == 0) {
            const bool lower = (rows[r].sense == RowSense::ge && a > 0) ||
                               (rows[r].sense == RowSense::le && a < 0);
            if (lower) {
              var_nonneg[v] = true;
              drop_row(r);
              changed = true;
            }
          }
        }
      }
    };

    auto eliminate_free = [&] {
      // Markowitz-ordered substitution of free variables through equalities.
      bool changed = true;
      while (changed) {
        changed = false;
        long best_score = -1;
        int best_var = -1, best_row = -1;
        for (int v = 0; v < orig_vars; ++v) {
          if (var_gone[v] || var_nonneg[v] || var_rows[v].empty()) continue;
          const long colnnz = static_cast<long>(var_rows[v].size());
          for (int r : var_rows[v]) {
            if (rows[r].sense != RowSense::eq) continue;
            const long score = (colnnz - 1) * (static_cast<long>(work[r].size()) - 1);
            if (best_score < 0 || score < best_score) {
              best_score = score;
              best_var = v;
              best_row = r;
            }
            if (best_score == 0) break;
          }
          if (best_score == 0) break;
        }
        if (best_var >= 0 && best_score <= 4096) {
          const Rat cv = work[best_row][best_var];
          eliminate(best_var, best_row, cv, work, row_alive, var_rows);
          changed = true;
        }
      }
    };

    fold_singletons();
    eliminate_free();
    fold_singletons();

    for (int r = 0; r < nr; ++r) {
      if (!row_alive[r]) continue;
      if (work[r].empty()) {
        zero_rows.push_back(r);
        continue;
      }
      rows[r].terms.assign(work[r].begin(), work[r].end());
      active_rows.push_back(r);
    }
  }

  void eliminate(int v, int r, const Rat& coeff, std::vector<std::map<int, Rat>>& work,
                 std::vector<bool>& row_alive, std::vector<std::set<int>>& var_rows) {
    ElimRecord rec;
    rec.var = v;
    rec.row = r;
    rec.coeff = coeff;
    for (const auto& [k, a] : work[r])
      if (k != v) rec.terms.emplace_back(k, a);

    const std::set<int> targets = var_rows[v];
    for (int s : targets) {
      if (s == r) continue;
      const Rat f = work[s][v] / coeff;
      work[s].erase(v);
      var_rows[v].erase(s);
      for (const auto& [k, a] : rec.terms) {
        Rat& cell = work[s][k];
        const bool was_zero = (cell == 0);
        cell -= f * a;
        if (cell == 0) {
          work[s].erase(k);
          var_rows[k].erase(s);
        } else if (was_zero) {
          var_rows[k].insert(s);
        }
      }
      rhs_ops.push_back({s, r, f});
      rhs_work[s] -= f * rhs_work[r];
      if (taint[r]) taint[s] = true;
    }
    for (const auto& [k, a] : rec.terms) var_rows[k].erase(r);
    var_rows[v].clear();
    work[r].clear();
    row_alive[r] = false;
    var_gone[v] = true;
    elims.push_back(std::move(rec));
  }

  // Returns false when the replayed system is structurally infeasible.
  bool replay_rhs(const RatVector* param_values) {
    rhs_work = rhs0;
    if (param_values) {
      if (param_values->size() != static_cast<Eigen::Index>(parametric.size()))
        throw std::invalid_argument("parametric rhs size mismatch");
      for (std::size_t i = 0; i < parametric.size(); ++i)
        rhs_work[parametric[i]] = (*param_values)[static_cast<Eigen::Index>(i)];
    }
    for (const auto& op : rhs_ops) rhs_work[op.target] -= op.factor * rhs_work[op.source];
    for (int r : zero_rows) {
      // The row lost all terms; 0 (sense) rhs must still hold.
      if (rows[r].sense == RowSense::eq && rhs_work[r] != 0) return false;
      if (rows[r].sense == RowSense::le && rhs_work[r] < 0) return false;
      if (rows[r].sense == RowSense::ge && rhs_work[r] > 0) return false;
    }
    for (const auto& [r, a] : sign_checks)
      if (rhs_work[r] / a < 0) return false;
    b.assign(m, Rat(0));
    for (int slot = 0; slot < m; ++slot) b[slot] = rhs_work[active_rows[slot]];
    return true;
  }

  // ---------- standard form ----------

  void build_standard() {
    m = static_cast<int>(active_rows.size());
    cols.clear();
    col_owner.clear();
    col_negated.clear();
    std::vector<int> pos_col(orig_vars, -1), neg_col(orig_vars, -1);

    auto new_col = [&](int owner, bool negated) {
      cols.emplace_back();
      col_owner.push_back(owner);
      col_negated.push_back(negated);
      return static_cast<int>(cols.size()) - 1;
    };

    for (int slot = 0; slot < m; ++slot) {
      const LpRow& row = rows[active_rows[slot]];
      for (const auto& [v, c] : row.terms) {
        if (pos_col[v] < 0) {
          pos_col[v] = new_col(v, false);
          if (!var_nonneg[v]) neg_col[v] = new_col(v, true);
        }
        cols[pos_col[v]].emplace_back(slot, c);
        if (neg_col[v] >= 0) cols[neg_col[v]].emplace_back(slot, Rat(-c));
      }
    }
    // Orphan model variables (no active row) still need columns so that the
    // objective can price them and rays can use them.
    for (int v = 0; v < orig_vars; ++v) {
      if (var_gone[v] || pos_col[v] >= 0) continue;
      pos_col[v] = new_col(v, false);
      if (!var_nonneg[v]) neg_col[v] = new_col(v, true);
    }
    for (int slot = 0; slot < m; ++slot) {
      const LpRow& row = rows[active_rows[slot]];
      if (row.sense == RowSense::le) cols[new_col(-1, false)].emplace_back(slot, Rat(1));
      if (row.sense == RowSense::ge) cols[new_col(-1, false)].emplace_back(slot, Rat(-1));
    }
    art_of_row.assign(m, -1);
    for (int slot = 0; slot < m; ++slot) {
      art_of_row[slot] = new_col(-1, false);
      cols[art_of_row[slot]].emplace_back(slot, Rat(1));
    }
    n_total = static_cast<int>(cols.size());
    is_artificial.assign(n_total, false);
    for (int slot = 0; slot < m; ++slot) is_artificial[art_of_row[slot]] = true;
  }

  // ---------- factorization ----------

  void factor() {
    etas.clear();
    lu = LuFactor{};
    std::vector<Terms> wcols(m);
    for (int s = 0; s < m; ++s) wcols[s] = cols[basic[s]];
    std::vector<bool> row_active(m, true), col_active(m, true);
    std::vector<int> row_cnt(m, 0);
    for (int s = 0; s < m; ++s)
      for (const auto& [r, val] : wcols[s]) ++row_cnt[r];

    for (int step = 0; step < m; ++step) {
      long best = -1;
      int pr = -1, pc = -1;
      for (int s = 0; s < m; ++s) {
        if (!col_active[s]) continue;
        long cn = 0;
        for (const auto& [r, val] : wcols[s])
          if (row_active[r]) ++cn;
        for (const auto& [r, val] : wcols[s]) {
          if (!row_active[r]) continue;
          const long score = (cn - 1) * (static_cast<long>(row_cnt[r]) - 1);
          if (best < 0 || score < best) {
            best = score;
            pr = r;
            pc = s;
          }
        }
      }
      if (pc < 0) throw std::logic_error("singular basis in factorization");
      Rat piv(0);
      Terms below;
      for (const auto& [r, val] : wcols[pc]) {
        if (!row_active[r]) continue;
        if (r == pr) piv = val;
        else below.emplace_back(r, val);
      }
      for (auto& [r, val] : below) val /= piv;
      Terms uentries;
      for (int s = 0; s < m; ++s) {
        if (!col_active[s] || s == pc) continue;
        Rat at_pr(0);
        bool found = false;
        for (const auto& [r, val] : wcols[s])
          if (row_active[r] && r == pr) { at_pr = val; found = true; break; }
        if (!found || at_pr == 0) continue;
        uentries.emplace_back(s, at_pr);
        // Right-looking update: col_s -= at_pr * below (sorted merge).
        Terms merged;
        merged.reserve(wcols[s].size() + below.size());
        auto it = wcols[s].begin();
        auto jt = below.begin();
        while (it != wcols[s].end() || jt != below.end()) {
          if (jt == below.end() || (it != wcols[s].end() && it->first < jt->first)) {
            merged.push_back(*it++);
          } else if (it == wcols[s].end() || jt->first < it->first) {
            Rat nv = -at_pr * jt->second;
            if (nv != 0) {
              merged.emplace_back(jt->first, std::move(nv));
              if (row_active[jt->first]) ++row_cnt[jt->first];
            }
            ++jt;
          } else {
            Rat nv = it->second - at_pr * jt->second;
            if (nv != 0) merged.emplace_back(it->first, std::move(nv));
            else if (row_active[it->first]) --row_cnt[it->first];
            ++it;
            ++jt;
          }
        }
        wcols[s] = std::move(merged);
      }
      for (const auto& [r, val] : wcols[pc])
        if (row_active[r]) --row_cnt[r];
      row_active[pr] = false;
      col_active[pc] = false;
      lu.prow.push_back(pr);
      lu.pcol.push_back(pc);
      lu.pivval.push_back(piv);
      lu.lcol.push_back(std::move(below));
      lu.urow.push_back(std::move(uentries));
    }
  }

  // Solve B s = a; `a` indexed by row, result by slot.
  std::vector<Rat> ftran(const std::vector<Rat>& a) const {
    std::vector<Rat> z = a;
    for (int k = 0; k < m; ++k) {
      const Rat& t = z[lu.prow[k]];
      if (t == 0) continue;
      for (const auto& [i, l] : lu.lcol[k]) z[i] -= l * t;
    }
    std::vector<Rat> s(m, Rat(0));
    for (int k = m - 1; k >= 0; --k) {
      Rat val = z[lu.prow[k]];
      for (const auto& [slotj, u] : lu.urow[k])
        if (s[slotj] != 0) val -= u * s[slotj];
      if (val != 0) val /= lu.pivval[k];
      s[lu.pcol[k]] = std::move(val);
    }
    for (const auto& eta : etas) {
      Rat t = s[eta.slot] / eta.wr;
      for (const auto& [i, wi] : eta.w)
        if (i != eta.slot) s[i] -= wi * t;
      s[eta.slot] = std::move(t);
    }
    return s;
  }

  // Solve y^T B = c; `c` indexed by slot, result by row.
  std::vector<Rat> btran(const std::vector<Rat>& c_in) const {
    std::vector<Rat> c = c_in;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      Rat acc = c[it->slot];
      for (const auto& [i, wi] : it->w)
        if (i != it->slot && c[i] != 0) acc -= c[i] * wi;
      c[it->slot] = acc / it->wr;
    }
    std::vector<Rat> v(m, Rat(0)), acc(m, Rat(0));
    for (int k = 0; k < m; ++k) {
      Rat val = c[lu.pcol[k]] - acc[lu.pcol[k]];
      if (val != 0) val /= lu.pivval[k];
      v[lu.prow[k]] = std::move(val);
      if (v[lu.prow[k]] != 0)
        for (const auto& [slotj, u] : lu.urow[k]) acc[slotj] += u * v[lu.prow[k]];
    }
    for (int k = m - 1; k >= 0; --k) {
      Rat& target = v[lu.prow[k]];
      for (const auto& [i, l] : lu.lcol[k])
        if (v[i] != 0) target -= l * v[i];
    }
    return v;
  }

  std::vector<Rat> column_dense(int var) const {
    std::vector<Rat> a(m, Rat(0));
    for (const auto& [r, val] : cols[var]) a[r] = val;
    return a;
  }

  Rat dot_col(const std::vector<Rat>& y, int var) const {
    Rat acc(0);
    for (const auto& [r, val] : cols[var])
      if (y[r] != 0) acc += y[r] * val;
    return acc;
  }

  void refresh_xb() {
    xb = ftran(b);
  }

  void apply_pivot(int entering, int slot, const std::vector<Rat>& w, const Rat& theta) {
    Eta eta;
    eta.slot = slot;
    eta.wr = w[slot];
    for (int i = 0; i < m; ++i)
      if (w[i] != 0) eta.w.emplace_back(i, w[i]);
    for (int i = 0; i < m; ++i) {
      if (i == slot) continue;
      if (w[i] != 0) xb[i] -= theta * w[i];
    }
    xb[slot] = theta;
    pos_of[basic[slot]] = -1;
    basic[slot] = entering;
    pos_of[entering] = slot;
    etas.push_back(std::move(eta));
    ++pivots;
    long eta_nnz = 0;
    for (const auto& e : etas) eta_nnz += static_cast<long>(e.w.size());
    if (static_cast<long>(etas.size()) > 64 || eta_nnz > 12L * m) {
      factor();
      refresh_xb();
    }
  }

  // Primal simplex from the current (primal feasible) basis.
  LpStatus primal(const std::vector<Rat>& costs, std::vector<Rat>* ray_out) {
    int stall = 0;
    while (true) {
      std::vector<Rat> cb(m);
      for (int s = 0; s < m; ++s) cb[s] = costs[basic[s]];
      const std::vector<Rat> y = btran(cb);
      const bool bland = stall > 200;
      int enter = -1;
      Rat enter_d(0);
      for (int j = 0; j < n_total; ++j) {
        if (pos_of[j] >= 0 || is_artificial[j]) continue;
        if (costs[j] == 0 && cols[j].empty()) continue;
        Rat d = costs[j] - dot_col(y, j);
        if (d < 0) {
          if (bland) { enter = j; break; }
          if (enter < 0 || d < enter_d) { enter = j; enter_d = std::move(d); }
        }
      }
      if (enter < 0) return LpStatus::optimal;
      const std::vector<Rat> w = ftran(column_dense(enter));
      int leave = -1;
      Rat theta(0);
      for (int i = 0; i < m; ++i) {
        if (w[i] <= 0) continue;
        Rat ratio = xb[i] / w[i];
        if (leave < 0 || ratio < theta ||
            (ratio == theta && basic[i] < basic[leave])) {
          leave = i;
          theta = std::move(ratio);
        }
      }
      if (leave < 0) {
        if (ray_out) {
          ray_out->assign(n_total, Rat(0));
          (*ray_out)[enter] = 1;
          for (int i = 0; i < m; ++i)
            if (w[i] != 0) (*ray_out)[basic[i]] = -w[i];
        }
        return LpStatus::unbounded;
      }
      stall = (theta == 0) ? stall + 1 : 0;
      apply_pivot(enter, leave, w, theta);
    }
  }

  // Dual simplex driving out negative basic values; requires the current
  // basis to be dual feasible for `costs` (true for the costs last optimized,
  // and for zero costs from any basis).
  LpStatus dual_repair(const std::vector<Rat>& costs) {
    while (true) {
      int slot = -1;
      for (int i = 0; i < m; ++i) {
        if (xb[i] < 0 && (slot < 0 || basic[i] < basic[slot])) slot = i;
      }
      if (slot < 0) return LpStatus::optimal;
      std::vector<Rat> e(m, Rat(0));
      e[slot] = 1;
      const std::vector<Rat> yr = btran(e);
      std::vector<Rat> cb(m);
      for (int s = 0; s < m; ++s) cb[s] = costs[basic[s]];
      const std::vector<Rat> y = btran(cb);
      int enter = -1;
      Rat best_ratio(0);
      for (int j = 0; j < n_total; ++j) {
        if (pos_of[j] >= 0 || is_artificial[j]) continue;
        const Rat alpha = dot_col(yr, j);
        if (alpha >= 0) continue;
        Rat d = costs[j] - dot_col(y, j);
        Rat ratio = d / alpha;  // <= 0
        if (enter < 0 || ratio > best_ratio || (ratio == best_ratio && j < enter)) {
          enter = j;
          best_ratio = std::move(ratio);
        }
      }
      if (enter < 0) return LpStatus::infeasible;
      const std::vector<Rat> w = ftran(column_dense(enter));
      const Rat theta = xb[slot] / w[slot];
      apply_pivot(enter, slot, w, theta);
    }
  }

  // Phase 1 with fresh artificial columns; leaves a primal feasible basis or
  // reports infeasibility.
  LpStatus phase1() {
    basic.assign(m, -1);
    pos_of.assign(n_total, -1);
    for (int slot = 0; slot < m; ++slot) {
      const int art = art_of_row[slot];
      cols[art].clear();
      cols[art].emplace_back(slot, Rat(b[slot] >= 0 ? 1 : -1));
      basic[slot] = art;
      pos_of[art] = slot;
    }
    factor();
    refresh_xb();
    // Artificials never re-enter once out; the restriction keeps the phase 1
    // optimum at zero exactly when the system is feasible.
    std::vector<Rat> costs(n_total, Rat(0));
    for (int j = 0; j < n_total; ++j)
      if (is_artificial[j]) costs[j] = 1;
    const LpStatus st = primal(costs, nullptr);
    if (st != LpStatus::optimal) throw std::logic_error("phase 1 cannot be unbounded");
    Rat total(0);
    for (int s = 0; s < m; ++s)
      if (is_artificial[basic[s]]) total += xb[s];
    if (total != 0) return LpStatus::infeasible;
    // Pivot zero-level artificials out where a structural column is available.
    for (int slot = 0; slot < m; ++slot) {
      if (!is_artificial[basic[slot]]) continue;
      std::vector<Rat> e(m, Rat(0));
      e[slot] = 1;
      const std::vector<Rat> yr = btran(e);
      for (int j = 0; j < n_total; ++j) {
        if (is_artificial[j] || pos_of[j] >= 0) continue;
        if (dot_col(yr, j) != 0) {
          const std::vector<Rat> w = ftran(column_dense(j));
          apply_pivot(j, slot, w, xb[slot] / w[slot]);
          break;
        }
      }
    }
    has_basis = true;
    return LpStatus::optimal;
  }

  // ---------- objective and solution mapping ----------

  std::vector<Rat> transform_costs(const RatVector& c_model) {
    if (c_model.size() != orig_vars) throw std::invalid_argument("objective size mismatch");
    std::vector<Rat> cw(orig_vars);
    for (int v = 0; v < orig_vars; ++v) cw[v] = c_model[v];
    for (const auto& rec : elims) {
      const Rat coef = cw[rec.var];
      if (coef == 0) continue;
      for (const auto& [k, a] : rec.terms) cw[k] -= coef * a / rec.coeff;
      cw[rec.var] = 0;
    }
    std::vector<Rat> costs(n_total, Rat(0));
    for (int j = 0; j < n_total; ++j) {
      if (col_owner[j] < 0) continue;
      costs[j] = col_negated[j] ? Rat(-cw[col_owner[j]]) : cw[col_owner[j]];
    }
    return costs;
  }

  RatVector map_back(const std::vector<Rat>& xstd, bool is_ray) const {
    RatVector x = RatVector::Zero(orig_vars);
    for (int j = 0; j < n_total; ++j) {
      if (col_owner[j] < 0 || xstd[j] == 0) continue;
      if (col_negated[j]) x[col_owner[j]] -= xstd[j];
      else x[col_owner[j]] += xstd[j];
    }
    for (auto it = elims.rbegin(); it != elims.rend(); ++it) {
      Rat val = is_ray ? Rat(0) : rhs_work[it->row];
      for (const auto& [k, a] : it->terms)
        if (x[k] != 0) val -= a * x[k];
      x[it->var] = val / it->coeff;
    }
    return x;
  }

  std::vector<Rat> current_std_point() const {
    std::vector<Rat> x(n_total, Rat(0));
    for (int s = 0; s < m; ++s) x[basic[s]] = xb[s];
    return x;
  }

  LpResult run_min(const RatVector& c_model) {
    LpResult res;
    if (!replay_current()) {
      res.status = LpStatus::infeasible;
      return res;
    }
    const std::vector<Rat> costs = transform_costs(c_model);
    if (!has_basis) {
      if (phase1() == LpStatus::infeasible) {
        res.status = LpStatus::infeasible;
        return res;
      }
    } else {
      refresh_xb();
      bool neg = false;
      for (int i = 0; i < m; ++i)
        if (xb[i] < 0) { neg = true; break; }
      if (neg) {
        // Restore primal feasibility against the zero objective first.
        std::vector<Rat> zero(n_total, Rat(0));
        if (dual_repair(zero) == LpStatus::infeasible) {
          res.status = LpStatus::infeasible;
          return res;
        }
      }
    }
    std::vector<Rat> ray_std;
    const LpStatus st = primal(costs, &ray_std);
    if (st == LpStatus::unbounded) {
      res.status = LpStatus::unbounded;
      res.ray = map_back(ray_std, true);
      return res;
    }
    res.status = LpStatus::optimal;
    res.point = map_back(current_std_point(), false);
    Rat val(0);
    for (int v = 0; v < orig_vars; ++v)
      if (c_model[v] != 0) val += c_model[v] * res.point[v];
    res.value = std::move(val);
    return res;
  }

  // Tracks the rhs values the context currently solves against.
  bool have_param_values = false;
  RatVector param_values;

  bool replay_current() {
    const RatVector* pv = have_param_values ? &param_values : nullptr;
    return replay_rhs(pv);
  }

  LpResult run_feasible(const RatVector* values) {
    LpResult res;
    if (values) {
      param_values = *values;
      have_param_values = true;
    }
    if (!replay_current()) {
      res.status = LpStatus::infeasible;
      return res;
    }
    if (!has_basis) {
      if (phase1() == LpStatus::infeasible) {
        res.status = LpStatus::infeasible;
        return res;
      }
    } else {
      refresh_xb();
      bool neg = false;
      for (int i = 0; i < m; ++i)
        if (xb[i] < 0) { neg = true; break; }
      if (neg) {
        std::vector<Rat> zero(n_total, Rat(0));
        if (dual_repair(zero) == LpStatus::infeasible) {
          res.status = LpStatus::infeasible;
          return res;
        }
      }
    }
    res.status = LpStatus::optimal;
    res.point = map_back(current_std_point(), false);
    res.value = 0;
    return res;
  }
};

LpContext::LpContext(const LpModel& model, std::vector<int> parametric_rows)
    : impl_(std::make_unique<Impl>()) {
  impl_->orig_vars = model.num_vars;
  impl_->var_nonneg.assign(model.num_vars, false);
  if (!model.nonneg.empty()) {
    if (static_cast<int>(model.nonneg.size()) != model.num_vars)
      throw std::invalid_argument("nonneg flag size mismatch");
    impl_->var_nonneg.assign(model.nonneg.begin(), model.nonneg.end());
  }
  impl_->var_gone.assign(model.num_vars, false);
  impl_->rows.reserve(model.rows.size());
  impl_->parametric_flag.assign(model.rows.size(), false);
  for (int r : parametric_rows) {
    if (r < 0 || r >= static_cast<int>(model.rows.size()))
      throw std::invalid_argument("parametric row out of range");
    impl_->parametric_flag[r] = true;
  }
  impl_->parametric = std::move(parametric_rows);
  for (const auto& row : model.rows) {
    LpRow nr;
    nr.terms = normalize_terms(row.terms, model.num_vars);
    nr.sense = row.sense;
    nr.rhs = row.rhs;
    impl_->rows.push_back(std::move(nr));
    impl_->rhs0.push_back(row.rhs);
  }
  impl_->presolve();
  impl_->build_standard();
}

LpContext::~LpContext() = default;
LpContext::LpContext(LpContext&&) noexcept = default;
LpContext& LpContext::operator=(LpContext&&) noexcept = default;

LpResult LpContext::minimize(const RatVector& objective) { return impl_->run_min(objective); }

LpResult LpContext::maximize(const RatVector& objective) {
  LpResult res = impl_->run_min(RatVector(-objective));
  res.value = -res.value;
  return res;
}

LpResult LpContext::feasible_with_rhs(const RatVector& values) {
  return impl_->run_feasible(&values);
}

LpResult LpContext::feasible() { return impl_->run_feasible(nullptr); }

long LpContext::pivot_count() const { return impl_->pivots; }

LpResult lp_exact(const LpModel& model, const RatVector& objective, bool maximize) {
  LpContext ctx(model);
  return maximize ? ctx.maximize(objective) : ctx.minimize(objective);
}

}  // namespace deltaef

//! Radial bound states by Numerov shooting on a composite lattice.
//!
//! The working equation is u''(r) = [V(r) + l(l+1)/r^2 - E] u(r) with
//! hbar^2/2m = 1 and u(0) = 0. The lattice is assembled from stages: a
//! logarithmic zone near the origin integrates w(t) = u/sqrt(r) in t = ln r,
//! which turns the centrifugal term into the constant (l + 1/2)^2, while
//! uniform zones further out pick a per-block step from the local
//! wavenumber. Short RK4 bridges carry (u, u') across stage seams, and for
//! steep repulsive cores the start point moves outward to where the WKB
//! suppression of the regular solution reaches ~e^-80, seeding a tiny
//! growing exponential there instead.
//!
//! Eigenvalues are located in two phases: bisection on the outward node
//! count brackets the level, then Brent's method drives the matching defect
//! (the normalized Wronskian of the outward and inward sweeps at the
//! outermost classically allowed lattice point) to zero on a frozen
//! lattice, so the defect is smooth in E.
//!
//! Zero-energy sweeps on an all-log lattice count bound states: nodes of
//! the regular solution, plus one when the growing-branch amplitude,
//! extracted at the far edge against first-order-corrected power
//! asymptotics, opposes the local sign of u (a final crossing then sits
//! beyond the lattice).

use crate::error::{Error, Result};
use crate::numerics::numerov::{count_nodes, derivative_at, numerov_sweep, rk4_bridge};
use crate::potential::{Family, Potential, TailKind};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Target phase advance (or decay log) per lattice step.
    pub phase_step: f64,
    /// Inner lattice edge as a fraction of the potential length scale.
    pub r_min_factor: f64,
    /// Decay lengths 1/kappa kept beyond the outer turning point.
    pub decay_lengths: f64,
    /// Accumulated WKB exponent kept past the turning point of a confining
    /// well.
    pub confining_phase: f64,
    pub max_points: usize,
    /// Relative tolerance on the eigenvalue.
    pub energy_tolerance: f64,
    /// Extra solve attempts on a refined lattice after a hard failure.
    pub retries: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            phase_step: 5e-3,
            r_min_factor: 1e-6,
            decay_lengths: 40.0,
            confining_phase: 45.0,
            max_points: 2_000_000,
            energy_tolerance: 1e-10,
            retries: 3,
        }
    }
}

/// A converged radial level with its lattice, wave function and moments.
#[derive(Debug, Clone)]
pub struct RadialState {
    pub n_r: usize,
    pub ell: usize,
    pub energy: f64,
    pub r: Vec<f64>,
    /// Reduced wave function, normalized to int u^2 dr = 1, u > 0 at small r.
    pub u: Vec<f64>,
    pub nodes: usize,
    /// <r^2> over the lattice.
    pub msr: f64,
    pub v_mean: f64,
    pub t_mean: f64,
    /// Simpson vs trapezoid discrepancy of the norm, a quadrature check.
    pub norm_defect: f64,
    /// |int u^2 dr - 1| re-integrated after scaling, same quadrature.
    pub unit_norm_defect: f64,
    /// Analytic bound on the <r^2> weight beyond the outer edge.
    pub tail_msr_bound: f64,
    pub warnings: Vec<String>,
}

impl RadialState {
    /// The dimensionless size-energy product -E <r^2>.
    pub fn product(&self) -> f64 {
        -self.energy * self.msr
    }
}

#[derive(Debug, Clone, Copy)]
struct Stage {
    lo: usize,
    hi: usize,
    /// Step in the stage variable: t = ln r when `log`, r otherwise.
    h: f64,
    log: bool,
    /// Side-corrected potential values when an endpoint sits on a jump.
    v_lo: Option<f64>,
    v_hi: Option<f64>,
}

struct Grid {
    r: Vec<f64>,
    v: Vec<f64>,
    stages: Vec<Stage>,
    ell: usize,
    start_suppressed: bool,
}

struct GridBuilder {
    r: Vec<f64>,
    stages: Vec<Stage>,
}

impl GridBuilder {
    fn new() -> Self {
        GridBuilder {
            r: Vec::new(),
            stages: Vec::new(),
        }
    }

    /// Append a block spanning [a, b] in radius with target step `h_target`
    /// in the stage variable. The first point is shared with the previous
    /// stage's last point.
    fn push(&mut self, a: f64, b: f64, h_target: f64, log: bool) {
        let (ta, tb) = if log { (a.ln(), b.ln()) } else { (a, b) };
        let span = tb - ta;
        debug_assert!(span > 0.0, "degenerate block [{a}, {b}]");
        let n = ((span / h_target).ceil() as usize).max(5);
        let h = span / n as f64;
        let lo = if self.r.is_empty() {
            self.r.push(a);
            0
        } else {
            debug_assert!((self.r[self.r.len() - 1] - a).abs() <= 1e-9 * a.abs().max(1.0));
            self.r.len() - 1
        };
        for i in 1..=n {
            if i == n {
                self.r.push(b);
            } else {
                let t = ta + h * i as f64;
                self.r.push(if log { t.exp() } else { t });
            }
        }
        self.stages.push(Stage {
            lo,
            hi: lo + n,
            h,
            log,
            v_lo: None,
            v_hi: None,
        });
    }

    fn finish(mut self, pot: &Potential, ell: usize, start_suppressed: bool) -> Grid {
        let v: Vec<f64> = self.r.iter().map(|&r| pot.eval_unchecked(r)).collect();
        let lscale = pot.scale_length();
        for b in pot.breakpoints() {
            for s in self.stages.iter_mut() {
                if (self.r[s.lo] - b).abs() <= 1e-9 * lscale {
                    s.v_lo = Some(pot.eval_unchecked(b * (1.0 + 1e-12)));
                }
                if (self.r[s.hi] - b).abs() <= 1e-9 * lscale {
                    s.v_hi = Some(pot.eval_unchecked(b * (1.0 - 1e-12)));
                }
            }
        }
        Grid {
            r: self.r,
            v,
            stages: self.stages,
            ell,
            start_suppressed,
        }
    }
}

fn stage_v(grid: &Grid, s: &Stage, k: usize) -> f64 {
    let idx = s.lo + k;
    if k == 0 {
        if let Some(v) = s.v_lo {
            return v;
        }
    }
    if idx == s.hi {
        if let Some(v) = s.v_hi {
            return v;
        }
    }
    grid.v[idx]
}

fn stage_f(grid: &Grid, s: &Stage, e: f64, out: &mut Vec<f64>) {
    out.clear();
    let lam = (grid.ell * (grid.ell + 1)) as f64;
    let lph = grid.ell as f64 + 0.5;
    for k in 0..=(s.hi - s.lo) {
        let r = grid.r[s.lo + k];
        let v = stage_v(grid, s, k);
        let f = if s.log {
            r * r * (v - e) + lph * lph
        } else {
            v - e + lam / (r * r)
        };
        out.push(f);
    }
}

/// RK4 carry of (u, u') between nearby radii; samples stay on the side of a
/// jump that the target lies on.
fn bridge_u(pot: &Potential, ell: usize, e: f64, x0: f64, u0: f64, p0: f64, x1: f64) -> (f64, f64) {
    let lam = (ell * (ell + 1)) as f64;
    let mut a = x0;
    let dir = if x1 > x0 { 1.0 } else { -1.0 };
    for b in pot.breakpoints() {
        if (x0 - b).abs() <= 1e-9 * pot.scale_length() {
            a = b * (1.0 + dir * 1e-12);
        }
    }
    let f = |r: f64| pot.eval_unchecked(r) + lam / (r * r) - e;
    rk4_bridge(f, a, u0, p0, x1, 12)
}

#[derive(Clone, Copy)]
struct EndState {
    u: f64,
    up: f64,
}

fn to_u_state(log: bool, r: f64, w: f64, wp: f64) -> EndState {
    if log {
        let rt = r.sqrt();
        EndState {
            u: w * rt,
            up: (0.5 * w + wp) / rt,
        }
    } else {
        EndState { u: w, up: wp }
    }
}

struct SweepOut {
    /// u on lattice indices 0..=stop, consistently scaled.
    u: Vec<f64>,
    nodes: usize,
    /// State at index `stop`, same scale as `u`.
    end: EndState,
}

fn sweep_outward(pot: &Potential, grid: &Grid, e: f64, stop: usize) -> SweepOut {
    debug_assert!(stop >= 2 && stop < grid.r.len());
    let lph = grid.ell as f64 + 0.5;
    let mut u_all = vec![0.0; stop + 1];
    let mut nodes = 0usize;
    let mut last_sign = 0i8;
    let mut carry: Option<EndState> = None;
    let mut end = EndState { u: 0.0, up: 0.0 };
    let mut f: Vec<f64> = Vec::new();
    let mut w: Vec<f64> = Vec::new();

    for s in grid.stages.iter() {
        if s.lo >= stop {
            break;
        }
        stage_f(grid, s, e, &mut f);
        let n = f.len();
        w.clear();
        w.resize(n, 0.0);
        match carry {
            None => {
                if grid.start_suppressed {
                    let g0 = f[0].max(0.0).sqrt();
                    w[0] = 1e-250;
                    w[1] = 1e-250 * ((g0 * s.h).min(500.0)).exp();
                } else if s.log {
                    w[0] = 1.0;
                    w[1] = (grid.r[s.lo + 1] / grid.r[s.lo]).powf(lph);
                } else {
                    w[0] = 1.0;
                    w[1] = (grid.r[s.lo + 1] / grid.r[s.lo]).powf(grid.ell as f64 + 1.0);
                }
            }
            Some(c) => {
                let r0 = grid.r[s.lo];
                let r1 = grid.r[s.lo + 1];
                let (u1, _) = bridge_u(pot, grid.ell, e, r0, c.u, c.up, r1);
                if s.log {
                    w[0] = c.u / r0.sqrt();
                    w[1] = u1 / r1.sqrt();
                } else {
                    w[0] = c.u;
                    w[1] = u1;
                }
            }
        }
        let info = numerov_sweep(&f, s.h, &mut w);
        let copy_hi = s.hi.min(stop);
        for idx in s.lo..=copy_hi {
            let k = idx - s.lo;
            let val = w[k];
            u_all[idx] = if s.log { val * grid.r[idx].sqrt() } else { val };
            if val != 0.0 {
                let sg = if val > 0.0 { 1 } else { -1 };
                if last_sign != 0 && sg != last_sign {
                    nodes += 1;
                }
                last_sign = sg;
            }
        }
        if info.log_scale != 0.0 {
            let fac = info.log_scale.exp();
            for v in u_all[..s.lo].iter_mut() {
                *v *= fac;
            }
        }
        if copy_hi == stop && s.hi > stop {
            let j = stop - s.lo;
            let wp = derivative_at(&f, &w, s.h, j);
            end = to_u_state(s.log, grid.r[stop], w[j], wp);
            return SweepOut {
                u: u_all,
                nodes,
                end,
            };
        }
        let j = n - 2;
        let wp = derivative_at(&f, &w, s.h, j);
        let st = to_u_state(s.log, grid.r[s.lo + j], w[j], wp);
        let (ue, upe) = bridge_u(
            pot,
            grid.ell,
            e,
            grid.r[s.lo + j],
            st.u,
            st.up,
            grid.r[s.hi],
        );
        carry = Some(EndState { u: ue, up: upe });
        if s.hi == stop {
            end = EndState { u: ue, up: upe };
        }
    }
    SweepOut {
        u: u_all,
        nodes,
        end,
    }
}

struct SweepIn {
    /// u on lattice indices m..=N-1 (element 0 is at index m).
    u: Vec<f64>,
    /// State at index m, same scale as `u`.
    end: EndState,
}

fn sweep_inward(pot: &Potential, grid: &Grid, e: f64, m: usize) -> SweepIn {
    let nlast = grid.r.len() - 1;
    debug_assert!(m + 2 <= nlast);
    let mut u_all = vec![0.0; nlast - m + 1];
    let mut carry: Option<EndState> = None;
    let mut end = EndState { u: 0.0, up: 0.0 };
    let mut f: Vec<f64> = Vec::new();
    let mut fr: Vec<f64> = Vec::new();
    let mut w: Vec<f64> = Vec::new();

    for s in grid.stages.iter().rev() {
        if s.hi <= m {
            break;
        }
        debug_assert!(!s.log, "matching point must sit in the uniform zone");
        stage_f(grid, s, e, &mut f);
        let n = f.len();
        fr.clear();
        fr.extend(f.iter().rev());
        w.clear();
        w.resize(n, 0.0);
        match carry {
            None => {
                let kap = fr[0].max(1e-300).sqrt();
                w[0] = 1e-20;
                w[1] = 1e-20 * ((kap * s.h).min(500.0)).exp();
            }
            Some(c) => {
                let r0 = grid.r[s.hi];
                let r1 = grid.r[s.hi - 1];
                let (u1, _) = bridge_u(pot, grid.ell, e, r0, c.u, c.up, r1);
                w[0] = c.u;
                w[1] = u1;
            }
        }
        let info = numerov_sweep(&fr, s.h, &mut w);
        let lo_eff = s.lo.max(m);
        for idx in lo_eff..=s.hi {
            u_all[idx - m] = w[s.hi - idx];
        }
        if info.log_scale != 0.0 {
            let fac = info.log_scale.exp();
            let from = (s.hi - m + 1).min(u_all.len());
            for v in u_all[from..].iter_mut() {
                *v *= fac;
            }
        }
        if s.lo < m {
            let j = s.hi - m;
            let wp = derivative_at(&fr, &w, s.h, j);
            end = EndState { u: w[j], up: -wp };
            return SweepIn { u: u_all, end };
        }
        let j = n - 2;
        let wp = derivative_at(&fr, &w, s.h, j);
        let r_j = grid.r[s.lo + 1];
        let (ue, upe) = bridge_u(pot, grid.ell, e, r_j, w[j], -wp, grid.r[s.lo]);
        carry = Some(EndState { u: ue, up: upe });
        if s.lo == m {
            end = EndState { u: ue, up: upe };
            return SweepIn { u: u_all, end };
        }
    }
    SweepIn { u: u_all, end }
}

/// Outermost lattice point that is classically allowed at energy `e`,
/// nudged to sit strictly inside a uniform stage.
fn matching_index(grid: &Grid, e: f64) -> usize {
    let lam = (grid.ell * (grid.ell + 1)) as f64;
    let nlast = grid.r.len() - 1;
    let mut m = 0usize;
    let mut found = false;
    for idx in 0..=nlast {
        let r = grid.r[idx];
        if grid.v[idx] - e + lam / (r * r) <= 0.0 {
            m = idx;
            found = true;
        }
    }
    if !found {
        m = nlast / 2;
    }
    let first_lin = grid
        .stages
        .iter()
        .find(|s| !s.log)
        .expect("lattice ends in uniform stages");
    m = m.max(first_lin.lo + 2).min(nlast - 2);
    let s = grid
        .stages
        .iter()
        .rev()
        .find(|s| !s.log && s.lo + 2 <= m)
        .expect("uniform stage below the matching point");
    m.min(s.hi - 2).max(s.lo + 2)
}

/// Normalized Wronskian of the outward and inward solutions at index m.
/// Zero exactly at eigenvalues of the truncated problem; smooth in E on a
/// fixed lattice.
fn matching_defect(pot: &Potential, grid: &Grid, e: f64, m: usize) -> f64 {
    let out = sweep_outward(pot, grid, e, m);
    let inw = sweep_inward(pot, grid, e, m);
    let s = grid
        .stages
        .iter()
        .find(|s| !s.log && s.lo <= m && m <= s.hi)
        .expect("matching stage");
    let h = s.h;
    let (uo, po) = (out.end.u, out.end.up);
    let (ui, pi) = (inw.end.u, inw.end.up);
    let no = uo.abs() + h * po.abs();
    let ni = ui.abs() + h * pi.abs();
    (po * ui - uo * pi) * h / (no * ni).max(1e-300)
}

/// Interior cut points (jump radii) filtered into (a, b) and sorted.
fn forced_cuts(a: f64, b: f64, forced: &[f64]) -> (f64, Vec<f64>) {
    let min_sep = 1e-9 * (b - a);
    let mut fs: Vec<f64> = forced
        .iter()
        .cloned()
        .filter(|&p| p > a + min_sep && p < b - min_sep)
        .collect();
    fs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    fs.dedup_by(|x, y| (*x - *y).abs() <= min_sep);
    (min_sep, fs)
}

/// Geometric edges over [a, b] (a > 0), about n blocks, with forced interior
/// cut points kept exact as block boundaries.
fn geometric_edges_with(a: f64, b: f64, n: usize, forced: &[f64]) -> Vec<f64> {
    let (min_sep, fs) = forced_cuts(a, b, forced);
    let mut cuts = vec![a];
    for p in fs {
        if p - *cuts.last().unwrap() > min_sep {
            cuts.push(p);
        }
    }
    cuts.push(b);
    let total = (b / a).ln();
    let mut edges = vec![a];
    for w in cuts.windows(2) {
        let span = (w[1] / w[0]).ln();
        let k = ((n as f64 * span / total).round() as usize).max(1);
        for j in 1..=k {
            if j == k {
                edges.push(w[1]);
            } else {
                edges.push(w[0] * (span * j as f64 / k as f64).exp());
            }
        }
    }
    edges
}

/// Uniform edges over [a, b] (any sign) with block width <= max_w and forced
/// interior cut points kept exact.
fn uniform_edges_with(a: f64, b: f64, max_w: f64, forced: &[f64]) -> Vec<f64> {
    let (min_sep, fs) = forced_cuts(a, b, forced);
    let mut cuts = vec![a];
    for p in fs {
        if p - *cuts.last().unwrap() > min_sep {
            cuts.push(p);
        }
    }
    cuts.push(b);
    let mut edges = vec![a];
    for w in cuts.windows(2) {
        let k = (((w[1] - w[0]) / max_w).ceil() as usize).max(1);
        for j in 1..=k {
            if j == k {
                edges.push(w[1]);
            } else {
                edges.push(w[0] + (w[1] - w[0]) * j as f64 / k as f64);
            }
        }
    }
    edges
}

/// Probe f = V_eff - e on a log-spaced set; returns (radii, f values).
fn probe_f(pot: &Potential, ell: usize, e: f64, a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let lam = (ell * (ell + 1)) as f64;
    let lr = (b / a).ln() / n as f64;
    let mut rs = Vec::with_capacity(n + 1);
    let mut fs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let r = a * (lr * k as f64).exp();
        rs.push(r);
        fs.push(pot.eval_unchecked(r) - e + lam / (r * r));
    }
    (rs, fs)
}

/// Inner start radius: walk inward from the first classically allowed probe
/// accumulating the WKB exponent; past ~80 the regular solution is dead and
/// the sweep may start there with tiny seeds.
fn wkb_start(rs: &[f64], fs: &[f64], r_min: f64) -> (f64, bool) {
    let ia = match fs.iter().position(|&f| f <= 0.0) {
        Some(i) if i > 0 => i,
        _ => return (r_min, false),
    };
    let mut acc = 0.0;
    for k in (0..ia).rev() {
        let dr = rs[k + 1] - rs[k];
        let g = 0.5 * (fs[k].max(0.0).sqrt() + fs[k + 1].max(0.0).sqrt());
        acc += g * dr;
        if acc >= 80.0 || fs[k] > 1e16 {
            return (rs[k], true);
        }
    }
    (r_min, false)
}

fn build_grid(pot: &Potential, ell: usize, e: f64, cfg: &SolverConfig) -> Result<Grid> {
    let lscale = pot.scale_length();
    let r_min = cfg.r_min_factor * lscale;
    let lam = (ell * (ell + 1)) as f64;

    let (r_max, r_start, suppressed) = if pot.is_confining() {
        if !(e > 0.0) {
            return Err(Error::InvalidInput(
                "confining spectra sit at positive energy".into(),
            ));
        }
        let rt = pot.classical_radius(e)?.max(10.0 * r_min);
        // extend past the turning point until the decay exponent is ample
        let mut r = rt;
        let mut acc = 0.0;
        let mut step = 0.02 * rt;
        while acc < cfg.confining_phase {
            let rm = r + 0.5 * step;
            let fm = pot.eval_unchecked(rm) - e + lam / (rm * rm);
            acc += fm.max(0.0).sqrt() * step;
            r += step;
            step *= 1.05;
        }
        let (rs, fs) = probe_f(pot, ell, e, r_min, r, 1500);
        let (r_start, suppressed) = wkb_start(&rs, &fs, r_min);
        (r, r_start, suppressed)
    } else {
        if !(e < 0.0) {
            return Err(Error::InvalidInput(
                "bound-state lattice needs E < 0".into(),
            ));
        }
        let kappa = (-e).sqrt();
        let probe_hi = cfg.decay_lengths / kappa + 20.0 * lscale;
        let (rs, fs) = probe_f(pot, ell, e, r_min, probe_hi, 1500);
        let rt = rs
            .iter()
            .zip(&fs)
            .rev()
            .find(|(_, &f)| f <= 0.0)
            .map(|(&r, _)| r)
            .unwrap_or(r_min);
        let (r_start, suppressed) = wkb_start(&rs, &fs, r_min);
        (rt + cfg.decay_lengths / kappa, r_start, suppressed)
    };

    let r_zone = (0.05 * lscale).min(0.5 * r_max);
    let r_start = r_start.min(0.8 * r_max);
    let mut gb = GridBuilder::new();

    let lin_start = if r_start < r_zone {
        let t0 = r_start.ln();
        let t1 = r_zone.ln();
        let nb = ((t1 - t0) / 0.6).ceil().max(1.0) as usize;
        for k in 0..nb {
            let ta = t0 + (t1 - t0) * k as f64 / nb as f64;
            let tb = t0 + (t1 - t0) * (k + 1) as f64 / nb as f64;
            let mut fmax: f64 = 1.0;
            for j in 0..=12 {
                let r = (ta + (tb - ta) * j as f64 / 12.0).exp();
                let ft = r * r * (pot.eval_unchecked(r) - e) + (ell as f64 + 0.5).powi(2);
                fmax = fmax.max(ft.abs());
            }
            let h = (0.5 / fmax.sqrt()).min(0.01);
            gb.push(ta.exp(), tb.exp(), h, true);
        }
        r_zone
    } else {
        r_start
    };

    let breaks = pot.breakpoints();
    let edges = geometric_edges_with(lin_start, r_max, 40, &breaks);
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mut fmax = e.abs().max(1e-300);
        for j in 0..17 {
            let r = a + (b - a) * (j as f64 + 0.5) / 17.0;
            let f = pot.eval_unchecked(r) - e + lam / (r * r);
            fmax = fmax.max(f.abs());
        }
        let h = (cfg.phase_step / fmax.sqrt()).min((b - a) / 3.0);
        gb.push(a, b, h, false);
    }

    if gb.r.len() > cfg.max_points {
        return Err(Error::Convergence(format!(
            "lattice would need {} points (cap {})",
            gb.r.len(),
            cfg.max_points
        )));
    }
    Ok(gb.finish(pot, ell, suppressed))
}

fn nodes_at(pot: &Potential, ell: usize, e: f64, cfg: &SolverConfig) -> Result<usize> {
    let grid = build_grid(pot, ell, e, cfg)?;
    let nlast = grid.r.len() - 1;
    Ok(sweep_outward(pot, &grid, e, nlast).nodes)
}

fn min_veff(pot: &Potential, ell: usize, a: f64, b: f64, n: usize) -> f64 {
    let (_, fs) = probe_f(pot, ell, 0.0, a, b, n);
    fs.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Bracket (elo, ehi) with N(elo) = n_r and N(ehi) = n_r + 1 and a gap
/// small enough to hand to the defect root finder.
fn energy_window(
    pot: &Potential,
    ell: usize,
    n_r: usize,
    cfg: &SolverConfig,
) -> Result<(f64, f64)> {
    let lscale = pot.scale_length();
    let r_min = cfg.r_min_factor * lscale;

    if pot.is_confining() {
        let (p, g) = match &pot.family {
            Family::PowerLaw { p, g } => (*p, *g),
            _ => unreachable!(),
        };
        let e_char = g.powf(2.0 / (p + 2.0));
        let floor = if ell == 0 {
            0.0
        } else {
            let lam = (ell * (ell + 1)) as f64;
            let r_star = (2.0 * lam / (p * g)).powf(1.0 / (p + 2.0));
            g * r_star.powf(p) + lam / (r_star * r_star)
        };
        let mut elo = floor + 1e-10 * e_char;
        if nodes_at(pot, ell, elo, cfg)? > n_r {
            return Err(Error::Convergence(
                "node count positive at the well floor".into(),
            ));
        }
        let mut ehi = floor + 2.0 * e_char;
        let mut n_hi = nodes_at(pot, ell, ehi, cfg)?;
        let mut guard = 0;
        while n_hi <= n_r {
            elo = ehi;
            ehi = floor + (ehi - floor) * 2.0;
            n_hi = nodes_at(pot, ell, ehi, cfg)?;
            guard += 1;
            if guard > 80 {
                return Err(Error::Convergence("level ladder ran away".into()));
            }
        }
        let mut n_lo = nodes_at(pot, ell, elo, cfg)?;
        for _ in 0..200 {
            if n_lo == n_r && n_hi == n_r + 1 && (ehi - elo) <= 0.2 * (elo - floor).max(1e-300) {
                return Ok((elo, ehi));
            }
            let emid = floor + ((elo - floor) * (ehi - floor)).sqrt();
            let nm = nodes_at(pot, ell, emid, cfg)?;
            if nm <= n_r {
                elo = emid;
                n_lo = nm;
            } else {
                ehi = emid;
                n_hi = nm;
            }
        }
        return Err(Error::Convergence("level bracket did not settle".into()));
    }

    let floor = min_veff(pot, ell, r_min, 50.0 * lscale, 4000);
    if !(floor < 0.0) {
        return Err(Error::NoBoundState {
            requested: n_r,
            available: 0,
        });
    }
    let mut elo = floor;
    let mut n_lo = 0usize; // f >= 0 everywhere at the floor: nodeless
    let mut ehi = elo * 0.25;
    let mut n_hi;
    loop {
        n_hi = nodes_at(pot, ell, ehi, cfg)?;
        if n_hi > n_r {
            break;
        }
        elo = ehi;
        n_lo = n_hi;
        ehi *= 0.25;
        if ehi > -1e-16 * floor.abs() {
            return Err(Error::Convergence(
                "requested level sits unresolvably close to threshold".into(),
            ));
        }
    }
    for _ in 0..200 {
        if n_lo == n_r && n_hi == n_r + 1 && elo / ehi <= 1.25 {
            return Ok((elo, ehi));
        }
        let emid = -(elo * ehi).sqrt();
        let nm = nodes_at(pot, ell, emid, cfg)?;
        if nm <= n_r {
            elo = emid;
            n_lo = nm;
        } else {
            ehi = emid;
            n_hi = nm;
        }
    }
    Err(Error::Convergence("level bracket did not settle".into()))
}

fn trapezoid_uniform(y: &[f64], h: f64) -> f64 {
    if y.len() < 2 {
        return 0.0;
    }
    let inner: f64 = y[1..y.len() - 1].iter().sum();
    h * (0.5 * (y[0] + y[y.len() - 1]) + inner)
}

/// Composite Simpson on a uniform lattice; an odd interval count closes the
/// last three intervals with the 3/8 rule.
fn simpson_uniform(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    if n < 2 {
        return 0.0;
    }
    let m = n - 1;
    if m == 1 {
        return 0.5 * h * (y[0] + y[1]);
    }
    let even = if m % 2 == 0 { m } else { m - 3 };
    let mut s = 0.0;
    if even >= 2 {
        let mut odd_sum = 0.0;
        let mut even_sum = 0.0;
        let mut i = 1;
        while i < even {
            odd_sum += y[i];
            if i + 1 < even {
                even_sum += y[i + 1];
            }
            i += 2;
        }
        s += h / 3.0 * (y[0] + y[even] + 4.0 * odd_sum + 2.0 * even_sum);
    }
    if m % 2 == 1 {
        let k = even;
        s += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
    }
    s
}

struct Moments {
    norm2: f64,
    norm2_trap: f64,
    msr_raw: f64,
    v_raw: f64,
}

fn moments(grid: &Grid, u: &[f64]) -> Moments {
    let mut mo = Moments {
        norm2: 0.0,
        norm2_trap: 0.0,
        msr_raw: 0.0,
        v_raw: 0.0,
    };
    let mut yn: Vec<f64> = Vec::new();
    let mut ym: Vec<f64> = Vec::new();
    let mut yv: Vec<f64> = Vec::new();
    for s in grid.stages.iter() {
        let n = s.hi - s.lo + 1;
        yn.clear();
        ym.clear();
        yv.clear();
        for k in 0..n {
            let idx = s.lo + k;
            let r = grid.r[idx];
            let uu = u[idx] * u[idx];
            let v = stage_v(grid, s, k);
            // log stages integrate in t: dr = r dt
            let meas = if s.log { r } else { 1.0 };
            yn.push(uu * meas);
            ym.push(uu * r * r * meas);
            yv.push(uu * v * meas);
        }
        mo.norm2 += simpson_uniform(&yn, s.h);
        mo.norm2_trap += trapezoid_uniform(&yn, s.h);
        mo.msr_raw += simpson_uniform(&ym, s.h);
        mo.v_raw += simpson_uniform(&yv, s.h);
    }
    mo
}

fn assemble(
    pot: &Potential,
    grid: &Grid,
    e: f64,
    m: usize,
    n_r: usize,
    ell: usize,
) -> Result<RadialState> {
    let out = sweep_outward(pot, grid, e, m);
    let inw = sweep_inward(pot, grid, e, m);
    let n = grid.r.len();
    let (com, cim) = (out.end.u, inw.end.u);
    if com == 0.0 || cim == 0.0 || !com.is_finite() || !cim.is_finite() {
        return Err(Error::Convergence(
            "vanishing amplitude at the matching radius".into(),
        ));
    }
    let mut u = vec![0.0; n];
    for i in 0..=m {
        u[i] = out.u[i] / com;
    }
    for i in m..n {
        u[i] = inw.u[i - m] / cim;
    }
    let nodes = count_nodes(&u);
    if nodes != n_r {
        return Err(Error::Convergence(format!(
            "matched solution has {nodes} nodes, wanted {n_r}"
        )));
    }
    let mo = moments(grid, &u);
    if !(mo.norm2 > 0.0) || !mo.norm2.is_finite() {
        return Err(Error::Convergence("norm integral failed".into()));
    }
    let scale = 1.0 / mo.norm2.sqrt();
    let flip = if u.iter().find(|&&x| x != 0.0).map_or(false, |&x| x < 0.0) {
        -1.0
    } else {
        1.0
    };
    for x in u.iter_mut() {
        *x *= scale * flip;
    }
    let msr = mo.msr_raw / mo.norm2;
    let v_mean = mo.v_raw / mo.norm2;
    let norm_defect = ((mo.norm2 - mo.norm2_trap) / mo.norm2).abs();
    let unit_norm_defect = (moments(grid, &u).norm2 - 1.0).abs();

    let mut warnings = Vec::new();
    let nlast = n - 1;
    let lam = (ell * (ell + 1)) as f64;
    let r_end = grid.r[nlast];
    let f_end = grid.v[nlast] - e + lam / (r_end * r_end);
    let kap = f_end.max(e.abs().max(1e-30)).sqrt();
    let ue = u[nlast].abs();
    let tail_msr_bound = ue
        * ue
        * (r_end * r_end / (2.0 * kap) + r_end / (2.0 * kap * kap) + 1.0 / (4.0 * kap * kap * kap));
    if tail_msr_bound > 1e-10 * msr {
        warnings.push("outer-edge weight may bias <r^2>".into());
    }
    let umax = u.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if ue > 1e-8 * umax {
        warnings.push("wave function not fully decayed at the outer edge".into());
    }
    // |Simpson - trapezoid| tracks the trapezoid's own (kh)^2/12 error, so
    // this flags a lattice far too coarse rather than routine truncation
    if norm_defect > 1e-5 {
        warnings.push("norm quadrature self-check above 1e-5".into());
    }

    Ok(RadialState {
        n_r,
        ell,
        energy: e,
        r: grid.r.clone(),
        u,
        nodes,
        msr,
        v_mean,
        t_mean: e - v_mean,
        norm_defect,
        unit_norm_defect,
        tail_msr_bound,
        warnings,
    })
}

fn solve_once(pot: &Potential, n_r: usize, ell: usize, cfg: &SolverConfig) -> Result<RadialState> {
    let (mut a, mut b) = energy_window(pot, ell, n_r, cfg)?;
    let grid = build_grid(pot, ell, b, cfg)?;
    let nlast = grid.r.len() - 1;
    let emid = if pot.is_confining() {
        0.5 * (a + b)
    } else {
        -(a * b).sqrt()
    };
    let m = matching_index(&grid, emid);
    let mut da = matching_defect(pot, &grid, a, m);
    let mut db = matching_defect(pot, &grid, b, m);
    let mut shrink = 0;
    while da * db > 0.0 && shrink < 40 {
        let mid = if pot.is_confining() {
            0.5 * (a + b)
        } else {
            -(a * b).sqrt()
        };
        let nm = sweep_outward(pot, &grid, mid, nlast).nodes;
        if nm <= n_r {
            a = mid;
            da = matching_defect(pot, &grid, a, m);
        } else {
            b = mid;
            db = matching_defect(pot, &grid, b, m);
        }
        shrink += 1;
    }
    if da * db > 0.0 {
        return Err(Error::Convergence(
            "no defect sign change inside the node bracket".into(),
        ));
    }
    let xtol = cfg.energy_tolerance * 0.5 * (a.abs() + b.abs());
    let e_star = crate::numerics::roots::brent(
        |e| matching_defect(pot, &grid, e, m),
        a,
        b,
        xtol.max(f64::MIN_POSITIVE),
        300,
    );
    assemble(pot, &grid, e_star, m, n_r, ell)
}

/// Solve the bound level with `n_r` radial nodes and angular momentum `ell`.
pub fn solve_state(
    pot: &Potential,
    n_r: usize,
    ell: usize,
    cfg: &SolverConfig,
) -> Result<RadialState> {
    match pot.tail() {
        TailKind::Power { .. } | TailKind::Exponential | TailKind::FiniteRange { .. } => {
            let available = count_bound_states(pot, ell)?;
            if n_r >= available {
                return Err(Error::NoBoundState {
                    requested: n_r,
                    available,
                });
            }
        }
        _ => {}
    }
    let mut attempt_cfg = cfg.clone();
    let mut last_err = Error::Convergence("no solve attempts ran".into());
    for _ in 0..=cfg.retries {
        match solve_once(pot, n_r, ell, &attempt_cfg) {
            Ok(st) => return Ok(st),
            Err(e @ Error::NoBoundState { .. }) | Err(e @ Error::InvalidInput(_)) => return Err(e),
            Err(e) => last_err = e,
        }
        attempt_cfg.phase_step *= 0.5;
        attempt_cfg.decay_lengths += 10.0;
    }
    Err(last_err)
}

/// Numerical stiffness hint: the narrowest feature width in t = ln(r/L).
fn log_steepness(pot: &Potential) -> f64 {
    match &pot.family {
        Family::RationalN { n, .. } | Family::ExpN { n, .. } | Family::MixedRep4 { n, .. } => {
            1.0 / n.max(1.0)
        }
        Family::RationalCubed { .. } => 1.0 / 3.0,
        Family::WoodSaxon { r, a, .. } => a / r,
        Family::LjPair { p_rep, .. } => 1.0 / p_rep.max(1.0),
        _ => 1.0,
    }
}

/// All-log lattice for zero-energy sweeps, ending in a single extraction
/// stage spanning [x_stop/1.6, x_stop] times the length scale.
fn build_count_grid(pot: &Potential, ell: usize) -> Result<Option<Grid>> {
    let lscale = pot.scale_length();
    let lph = ell as f64 + 0.5;
    let x_stop = match pot.tail() {
        TailKind::FiniteRange { x_edge } => 1.6 * x_edge,
        TailKind::Exponential => {
            let thr = 1e-10 * lph * lph;
            let mut x = 3.0f64;
            let mut quiet = 0;
            while x < 2000.0 {
                let s = x * x * lscale * lscale * pot.eval_unchecked(x * lscale).abs();
                if s < thr {
                    quiet += 1;
                    if quiet >= 2 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
                x *= 1.12;
            }
            1.3 * x
        }
        TailKind::Power { p } => {
            let g = pot.coupling().map(|g| g.abs()).unwrap_or(1.0).max(1.0);
            let base: f64 = if p < 3.5 { 5000.0 } else { 1000.0 };
            base.max(40.0 * g.powf(1.0 / (p - 2.0)))
        }
        TailKind::InverseSquare => {
            return Err(Error::Unsupported(
                "state counting is ill-defined for an r^-2 tail".into(),
            ))
        }
        TailKind::Confining => {
            return Err(Error::Unsupported(
                "confining wells have no finite state count".into(),
            ))
        }
    };
    let r_min = 1e-6 * lscale;
    let r_stop = x_stop * lscale;

    // zero-energy probes in t for the start rule
    let np = 3000;
    let t0 = r_min.ln();
    let t1 = r_stop.ln();
    let mut ts = Vec::with_capacity(np + 1);
    let mut fts = Vec::with_capacity(np + 1);
    for k in 0..=np {
        let t = t0 + (t1 - t0) * k as f64 / np as f64;
        let r = t.exp();
        ts.push(t);
        fts.push(r * r * pot.eval_unchecked(r) + lph * lph);
    }
    let mut t_start = t0;
    let mut suppressed = false;
    let first_allowed = fts.iter().position(|&f| f <= 0.0);
    if first_allowed.is_none() {
        // With the log-form centrifugal term, f > 0 everywhere means the
        // effective potential sits above -1/(4r^2) pointwise, and Hardy's
        // inequality then keeps the Hamiltonian positive: nothing binds.
        // Bail before the step rule asks for a hopeless lattice in the core.
        return Ok(None);
    }
    if let Some(ia) = first_allowed {
        if ia > 0 {
            let mut acc = 0.0;
            for k in (0..ia).rev() {
                let dt = ts[k + 1] - ts[k];
                let g = 0.5 * (fts[k].max(0.0).sqrt() + fts[k + 1].max(0.0).sqrt());
                acc += g * dt;
                if acc >= 80.0 || fts[k] > 1e16 {
                    t_start = ts[k];
                    suppressed = true;
                    break;
                }
            }
        }
    }

    let t_ext = (r_stop / 1.6).ln();
    let steep = log_steepness(pot);
    let forced: Vec<f64> = pot.breakpoints().iter().map(|b| b.ln()).collect();
    let edges = uniform_edges_with(t_start, t_ext, 0.5, &forced);
    let mut gb = GridBuilder::new();
    for pair in edges.windows(2) {
        let (ta, tb) = (pair[0], pair[1]);
        let mut fmax: f64 = 1.0;
        for j in 0..=12 {
            let t = ta + (tb - ta) * j as f64 / 12.0;
            let r = t.exp();
            let ft = r * r * pot.eval_unchecked(r) + lph * lph;
            fmax = fmax.max(ft.abs());
        }
        let h = (0.45 / fmax.sqrt()).min(1e-3).min(0.25 * steep);
        gb.push(ta.exp(), tb.exp(), h, true);
    }
    gb.push(t_ext.exp(), r_stop, 1e-3, true);
    Ok(Some(gb.finish(pot, ell, suppressed)))
}

/// Growing/decaying zero-energy basis values at x = r/L, first-order
/// corrected for a residual power tail -g x^-p.
fn basis_pair(pot: &Potential, ell: usize, x: f64) -> (f64, f64) {
    let el = ell as f64;
    match pot.tail() {
        TailKind::Power { p } => {
            let gt = pot.coupling().unwrap_or(0.0);
            let sp = el + 1.0;
            let dn_p = sp * (sp - 1.0) - (sp - p + 2.0) * (sp - p + 1.0);
            let grow = if dn_p.abs() < 1e-9 {
                x.powf(sp) * (1.0 + gt / (2.0 * sp - 1.0) * x.ln() * x.powf(2.0 - p))
            } else {
                x.powf(sp) * (1.0 + gt / dn_p * x.powf(2.0 - p))
            };
            let sm = -el;
            let dn_m = sm * (sm - 1.0) - (sm - p + 2.0) * (sm - p + 1.0);
            let dec = x.powf(sm) * (1.0 + gt / dn_m * x.powf(2.0 - p));
            (grow, dec)
        }
        _ => (x.powf(el + 1.0), x.powf(-el)),
    }
}

/// Number of bound levels with angular momentum `ell`: nodes of the regular
/// zero-energy solution, plus one if a final crossing sits beyond the
/// lattice edge.
pub fn count_bound_states(pot: &Potential, ell: usize) -> Result<usize> {
    let grid = match build_count_grid(pot, ell)? {
        Some(g) => g,
        None => return Ok(0),
    };
    let nlast = grid.r.len() - 1;
    let out = sweep_outward(pot, &grid, 0.0, nlast);
    let s = *grid.stages.last().expect("count lattice has stages");
    let lscale = pot.scale_length();
    let i2 = s.hi;
    let target = (grid.r[s.hi] / 1.28).ln();
    let k = ((target - grid.r[s.lo].ln()) / s.h).round() as usize;
    let i1 = (s.lo + k).clamp(s.lo + 1, s.hi - 1);
    let (x1, x2) = (grid.r[i1] / lscale, grid.r[i2] / lscale);
    // a suppressed-core start leaves u around 1e-213, so bring the samples
    // to order one before mixing them (products of raw values underflow)
    let scale = out.u[i1].abs().max(out.u[i2].abs());
    if scale == 0.0 {
        return Ok(out.nodes);
    }
    let (u1, u2) = (out.u[i1] / scale, out.u[i2] / scale);
    let (p1, q1) = basis_pair(pot, ell, x1);
    let (p2, q2) = basis_pair(pot, ell, x2);
    let det = p1 * q2 - p2 * q1;
    let a_coef = (u1 * q2 - u2 * q1) / det;
    let extra = if a_coef * u2 < 0.0 { 1 } else { 0 };
    Ok(out.nodes + extra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;
    use approx::assert_relative_eq;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn oscillator_levels_and_moments() {
        let pot = Potential::power_law(2.0, 1.0).unwrap();
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert_relative_eq!(st.energy, 3.0, max_relative = 1e-8);
        assert_relative_eq!(st.msr, 1.5, max_relative = 1e-6);
        assert_relative_eq!(st.t_mean, 1.5, max_relative = 1e-6);
        assert_eq!(st.nodes, 0);
        assert!(st.norm_defect < 1e-5);

        let st1 = solve_state(&pot, 1, 0, &cfg()).unwrap();
        assert_relative_eq!(st1.energy, 7.0, max_relative = 1e-8);
        assert_eq!(st1.nodes, 1);

        let stp = solve_state(&pot, 0, 1, &cfg()).unwrap();
        assert_relative_eq!(stp.energy, 5.0, max_relative = 1e-8);
    }

    #[test]
    fn linear_well_airy_ground() {
        let pot = Potential::power_law(1.0, 1.0).unwrap();
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        // -(first zero of Ai), the exact ground level of u'' = (r - E) u
        assert_relative_eq!(st.energy, 2.3381074104597670, max_relative = 1e-8);
        assert_relative_eq!(st.t_mean, st.energy / 3.0, max_relative = 1e-6);
    }

    #[test]
    fn deep_square_well_matches_transcendental() {
        let v0 = 1e6;
        let pot = Potential::square_well(v0, 1.0).unwrap();
        // k cot k = -sqrt(v0 - k^2) on (pi/2, pi)
        let mut k: f64 = 3.1385;
        for _ in 0..60 {
            let cot = k.cos() / k.sin();
            let kap = (v0 - k * k).sqrt();
            let f = k * cot + kap;
            let fp = cot - k * (1.0 + cot * cot) + k / kap;
            let dk = f / fp;
            k -= dk;
            if dk.abs() < 1e-14 {
                break;
            }
        }
        let e_exact = k * k - v0;
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert_relative_eq!(st.energy, e_exact, max_relative = 1e-8);
        // near the infinite-well limit <r^2> -> R^2 (1/3 - 1/(2 pi^2))
        assert_relative_eq!(st.msr, 0.2826727, max_relative = 5e-3);
    }

    #[test]
    fn constant_moment_product_identity() {
        // for V = (x^-6 - b x^-2)/R^2 the product -E<r^2> equals
        // 1/2 + 2b/3 for every l = 0 level, exactly
        let pot = Potential::w_constant(1.0, 3.0, 1.0).unwrap();
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert!(st.energy < 0.0);
        assert_relative_eq!(st.product(), 2.5, max_relative = 1e-5);
    }

    #[test]
    fn rational_tail_ground_product() {
        let pot = Potential::rational_cubed(2.0, 1.0).unwrap();
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert_relative_eq!(st.product(), 0.85531, max_relative = 2e-3);
        assert_eq!(st.nodes, 0);
        assert!(st.norm_defect < 1e-5);
        assert!(st.warnings.is_empty(), "{:?}", st.warnings);
    }

    #[test]
    fn screened_coulomb_ground_product() {
        let pot = Potential::yukawa(2.0, 1.0).unwrap();
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert_relative_eq!(st.product(), 0.65199, max_relative = 2e-3);
    }

    #[test]
    fn scale_invariance_of_reduced_quantities() {
        let base = solve_state(&Potential::yukawa(2.0, 1.0).unwrap(), 0, 0, &cfg()).unwrap();
        for r in [0.5, 3.0] {
            let st = solve_state(&Potential::yukawa(2.0, r).unwrap(), 0, 0, &cfg()).unwrap();
            assert_relative_eq!(st.energy * r * r, base.energy, max_relative = 1e-9);
            assert_relative_eq!(st.msr / (r * r), base.msr, max_relative = 1e-9);
            assert_relative_eq!(st.product(), base.product(), max_relative = 1e-9);
        }
    }

    #[test]
    fn lattice_refinement_stability() {
        let pot = Potential::yukawa(2.0, 1.0).unwrap();
        let coarse = solve_state(&pot, 0, 0, &cfg()).unwrap();
        let fine_cfg = SolverConfig {
            phase_step: 2.5e-3,
            ..cfg()
        };
        let fine = solve_state(&pot, 0, 0, &fine_cfg).unwrap();
        assert_relative_eq!(coarse.energy, fine.energy, max_relative = 1e-8);
    }

    #[test]
    fn excited_states_ordered() {
        let pot = Potential::rational_cubed(25.0, 1.0).unwrap();
        let avail = count_bound_states(&pot, 0).unwrap();
        assert!(avail >= 2, "expected several levels, counted {avail}");
        let s0 = solve_state(&pot, 0, 0, &cfg()).unwrap();
        let s1 = solve_state(&pot, 1, 0, &cfg()).unwrap();
        assert!(s0.energy < s1.energy && s1.energy < 0.0);
        assert_eq!((s0.nodes, s1.nodes), (0, 1));
    }

    #[test]
    fn missing_states_are_reported() {
        let pot = Potential::yukawa(1.5, 1.0).unwrap();
        match solve_state(&pot, 0, 0, &cfg()) {
            Err(Error::NoBoundState {
                requested: 0,
                available: 0,
            }) => {}
            other => panic!("expected NoBoundState, got {other:?}"),
        }
        let pot = Potential::rational_cubed(2.0, 1.0).unwrap();
        match solve_state(&pot, 1, 0, &cfg()) {
            Err(Error::NoBoundState {
                requested: 1,
                available: 1,
            }) => {}
            other => panic!("expected NoBoundState, got {other:?}"),
        }
    }

    #[test]
    fn counting_matches_known_thresholds() {
        // screened Coulomb: critical strength 2/1.1906... = 1.6798
        assert_eq!(
            count_bound_states(&Potential::yukawa(1.6, 1.0).unwrap(), 0).unwrap(),
            0
        );
        assert_eq!(
            count_bound_states(&Potential::yukawa(1.7, 1.0).unwrap(), 0).unwrap(),
            1
        );
        // rational cubic tail, l = 0 and l = 1 first thresholds
        let rc = |g: f64| Potential::rational_cubed(g, 1.0).unwrap();
        assert_eq!(count_bound_states(&rc(1.30), 0).unwrap(), 0);
        assert_eq!(count_bound_states(&rc(1.35), 0).unwrap(), 1);
        assert_eq!(count_bound_states(&rc(6.90), 1).unwrap(), 0);
        assert_eq!(count_bound_states(&rc(6.96), 1).unwrap(), 1);
        // square well: pi^2/4 = 2.4674
        let sw = |g: f64| Potential::square_well(g, 1.0).unwrap();
        assert_eq!(count_bound_states(&sw(2.40), 0).unwrap(), 0);
        assert_eq!(count_bound_states(&sw(2.60), 0).unwrap(), 1);
        assert_eq!(count_bound_states(&sw(24.0), 0).unwrap(), 2);
    }

    #[test]
    fn pair_family_thresholds_closed_form() {
        // V = g [x^-2(n-1) - x^-n] maps to Kummer's equation at E = 0;
        // thresholds sit at g = (2N(n-2) - (n-3))^2
        let p4 = |g: f64| Potential::attractive_pair(4.0, g, 1.0).unwrap();
        assert_eq!(count_bound_states(&p4(8.7), 0).unwrap(), 0);
        assert_eq!(count_bound_states(&p4(9.3), 0).unwrap(), 1);
        assert_eq!(count_bound_states(&p4(48.5), 0).unwrap(), 1);
        assert_eq!(count_bound_states(&p4(49.5), 0).unwrap(), 2);
        let p6 = |g: f64| Potential::attractive_pair(6.0, g, 1.0).unwrap();
        assert_eq!(count_bound_states(&p6(24.5), 0).unwrap(), 0);
        assert_eq!(count_bound_states(&p6(25.5), 0).unwrap(), 1);
    }

    #[test]
    fn stiff_core_ground_state() {
        let pot = Potential::lj_pair(12.0, 6.0, 60.0, 1.0).unwrap();
        assert!(count_bound_states(&pot, 0).unwrap() >= 1);
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert!(st.energy < 0.0);
        assert_eq!(st.nodes, 0);
        assert!(st.norm_defect < 1e-5);
    }

    #[test]
    fn flat_well_solve_runs() {
        let pot = Potential::wood_saxon(1.0, 5.0, 1.0).unwrap();
        assert!(count_bound_states(&pot, 0).unwrap() >= 1);
        let st = solve_state(&pot, 0, 0, &cfg()).unwrap();
        assert!(st.energy > -1.0 && st.energy < 0.0);
        assert_eq!(st.nodes, 0);
    }
}

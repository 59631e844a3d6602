//! Certified search for the oscillation of a residual antiderivative.
//!
//! `‖μ − μ∗k‖ = sup_{α<β} |G(β−) − G(α)|` is the diameter of the closure of
//! `{G(x), G(x−)} ∪ {0}` in the complex plane. Sampling gives a lower bound
//! `D_lo` (the diameter of the sampled hull). Each cell between neighbouring
//! nodes carries a radius `ρ` such that every value of `G` on the cell lies
//! within `ρ` of the chord between its endpoint values, or within `ρ` of the
//! origin. Pairs of cells then give an upper bound, and cells that could
//! still hide a larger diameter are bisected.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{NormOptions, NormResult};
use crate::convolution::ResidualAntiderivative;
use crate::error::{Error, Result};
use crate::signals::Interval;

/// Number of kernel periods the support is inflated by for the dense grid.
const INFLATION_PERIODS: f64 = 20.0;

/// Above this many cell/hull-vertex pairs the farthest-sample distance is
/// bounded through the hull's circumscribing disc instead.
const EXACT_FARTHEST_LIMIT: usize = 40_000_000;

#[derive(Debug, Clone, Copy)]
struct Node {
    x: f64,
    right: Complex64,
    left: Complex64,
    /// Radius of the cell to the right of this node.
    rho: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sample {
    Origin,
    Right(usize),
    Left(usize),
}

struct Hull {
    /// Hull vertices with the sample they came from.
    vertices: Vec<(Complex64, Sample)>,
    diameter: f64,
    pair: (Sample, Sample),
}

pub(crate) fn certified_oscillation(
    g: &ResidualAntiderivative,
    opts: &NormOptions,
) -> Result<NormResult> {
    opts.validate()?;
    let window = opts.window.unwrap_or_else(|| g.window());
    let crit = g.critical_points();
    let Some((&lo, &hi)) = crit.first().zip(crit.last()) else {
        return Ok(NormResult {
            value: 0.0,
            attained_at: window,
            resolution: 0.0,
            tail_bound: 0.0,
        });
    };
    let atoms = g.atoms();
    let xs = initial_grid(g, &crit, lo, hi, &window, opts.density)?;

    let mut evaluations = 0usize;
    let mut nodes = evaluate(g, &xs, &atoms, &mut evaluations)?;
    let n = nodes.len();
    let rhos: Vec<f64> = (0..n - 1)
        .into_par_iter()
        .map(|i| cell_radius(g, nodes[i].x, nodes[i + 1].x))
        .collect();
    for (node, rho) in nodes.iter_mut().zip(rhos) {
        node.rho = rho;
    }
    nodes[n - 1].rho = 0.0;

    loop {
        let hull = sample_hull(&nodes);
        let d_lo = hull.diameter;
        let target = (opts.rel_target * d_lo).max(opts.abs_target);
        let pots = potentials(&nodes, &hull, None);
        let d_hi = pots.iter().copied().fold(d_lo, f64::max);
        if !opts.refine || d_hi <= d_lo + target || evaluations >= opts.max_evaluations {
            break;
        }
        let mut candidates: Vec<usize> = (0..pots.len())
            .filter(|&i| pots[i] > d_lo + target && nodes[i].rho > 0.25 * target)
            .collect();
        if candidates.is_empty() {
            break;
        }
        candidates.sort_by(|&a, &b| nodes[b].rho.total_cmp(&nodes[a].rho).then(a.cmp(&b)));
        candidates.truncate(opts.max_evaluations - evaluations);
        candidates.sort_unstable();
        let mids: Vec<f64> = candidates
            .iter()
            .map(|&i| 0.5 * (nodes[i].x + nodes[i + 1].x))
            .collect();
        let fresh = evaluate(g, &mids, &atoms, &mut evaluations)?;
        nodes = merge_nodes(g, nodes, fresh);
    }

    let hull = sample_hull(&nodes);
    let d_lo = hull.diameter;
    let finite = potentials(&nodes, &hull, None)
        .into_iter()
        .fold(d_lo, f64::max);
    let first = nodes[0].x;
    let last = nodes[nodes.len() - 1].x;
    let tails = (
        g.origin_bound(f64::NEG_INFINITY, first),
        g.origin_bound(last, f64::INFINITY),
    );
    let all = potentials(&nodes, &hull, Some(tails))
        .into_iter()
        .fold(d_lo, f64::max);
    let tail_bound = (all - finite).max(0.0);
    if !tail_bound.is_finite() || tail_bound > opts.max_tail_rel * d_lo.max(opts.abs_target) {
        return Err(Error::WindowTooSmall {
            window: (window.alpha, window.beta),
            reason: format!(
                "tail contribution {tail_bound:e} is not small against the norm {d_lo:e}"
            ),
        });
    }
    let resolution = finite - d_lo + 2.0 * g.accuracy().abs_tol;
    Ok(NormResult {
        value: d_lo,
        attained_at: attained_interval(&nodes, hull.pair, &window),
        resolution,
        tail_bound,
    })
}

/// Critical points, a dense grid near the support and a geometric far field.
///
/// Doubling `density` yields a superset of the previous grid.
fn initial_grid(
    g: &ResidualAntiderivative,
    crit: &[f64],
    lo: f64,
    hi: f64,
    window: &Interval,
    density: u32,
) -> Result<Vec<f64>> {
    let k = g.kernel();
    let (s_min, s_max) = (k.min_frequency(), k.max_frequency());
    let dens = f64::from(density);
    let reach = INFLATION_PERIODS * 2.0 * PI / s_min;
    let (e_lo, e_hi) = (lo - reach, hi + reach);
    if !(window.alpha < e_lo && e_hi < window.beta) {
        return Err(Error::WindowTooSmall {
            window: (window.alpha, window.beta),
            reason: format!("must contain the inflated support [{e_lo}, {e_hi}]"),
        });
    }
    let mut xs: Vec<f64> = crit.to_vec();
    xs.push(window.alpha);
    xs.push(window.beta);
    let mut lattice = |start: f64, end: f64, h: f64| {
        let count = ((end - start) / h).ceil() as usize;
        xs.extend((0..=count).map(|i| start + i as f64 * h));
    };
    lattice(e_lo, e_hi, PI / (4.0 * s_min * dens));
    let fine_reach = INFLATION_PERIODS * 2.0 * PI / s_max;
    lattice(lo - fine_reach, hi + fine_reach, PI / (4.0 * s_max * dens));

    let steps = 4.0 * dens;
    let mut i = 1u32;
    loop {
        let d = reach * ((f64::from(i) / steps).exp2() - 1.0);
        let (a, b) = (e_lo - d, e_hi + d);
        let mut inside = false;
        if a > window.alpha {
            xs.push(a);
            inside = true;
        }
        if b < window.beta {
            xs.push(b);
            inside = true;
        }
        if !inside {
            break;
        }
        i += 1;
    }
    xs.retain(|&x| window.alpha <= x && x <= window.beta);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    Ok(xs)
}

fn evaluate(
    g: &ResidualAntiderivative,
    xs: &[f64],
    atoms: &[f64],
    evaluations: &mut usize,
) -> Result<Vec<Node>> {
    *evaluations += xs.len();
    let nodes: Vec<Node> = xs
        .par_iter()
        .map(|&x| {
            let right = g.eval(x);
            let left = if atoms.binary_search_by(|a| a.total_cmp(&x)).is_ok() {
                g.left_limit(x)
            } else {
                right
            };
            Node {
                x,
                right,
                left,
                rho: f64::INFINITY,
            }
        })
        .collect();
    if let Some(bad) = nodes
        .iter()
        .find(|n| !(n.right.norm().is_finite() && n.left.norm().is_finite()))
    {
        return Err(Error::Domain(format!(
            "residual antiderivative is not finite at {}",
            bad.x
        )));
    }
    Ok(nodes)
}

/// Radius of `[a, b]`: chord deviation bound or bound on `|G|`, whichever is smaller.
fn cell_radius(g: &ResidualAntiderivative, a: f64, b: f64) -> f64 {
    let h = b - a;
    let chord = g.curvature_bound(a, b) * h * h / 8.0 + g.singular_variation(a, b);
    chord.min(g.origin_bound(a, b))
}

fn merge_nodes(g: &ResidualAntiderivative, old: Vec<Node>, fresh: Vec<Node>) -> Vec<Node> {
    let mut out = Vec::with_capacity(old.len() + fresh.len());
    let mut fresh = fresh.into_iter().peekable();
    for node in old {
        while let Some(f) = fresh.next_if(|f| f.x < node.x) {
            out.push(f);
        }
        out.push(node);
    }
    out.extend(fresh);
    out.dedup_by(|b, a| a.x == b.x);
    // Fresh nodes carry an infinite radius; a cell is stale if either end is fresh.
    let n = out.len();
    let updated: Vec<(usize, f64)> = (0..n - 1)
        .into_par_iter()
        .filter_map(|i| {
            let stale = out[i].rho.is_infinite() || out[i + 1].rho.is_infinite();
            stale.then(|| (i, cell_radius(g, out[i].x, out[i + 1].x)))
        })
        .collect();
    for (i, rho) in updated {
        out[i].rho = rho;
    }
    if let Some(last) = out.last_mut() {
        last.rho = 0.0;
    }
    out
}

fn sample_hull(nodes: &[Node]) -> Hull {
    let mut pts: Vec<(Complex64, Sample)> = Vec::with_capacity(nodes.len() + 1);
    pts.push((Complex64::new(0.0, 0.0), Sample::Origin));
    for (i, n) in nodes.iter().enumerate() {
        pts.push((n.right, Sample::Right(i)));
        if n.left != n.right {
            pts.push((n.left, Sample::Left(i)));
        }
    }
    let vertices = convex_hull(pts);
    let mut best = (0.0, (Sample::Origin, Sample::Origin));
    for (i, (p, sp)) in vertices.iter().enumerate() {
        for (q, sq) in &vertices[i + 1..] {
            let d = (p - q).norm();
            if d > best.0 {
                best = (d, (*sp, *sq));
            }
        }
    }
    Hull {
        vertices,
        diameter: best.0,
        pair: best.1,
    }
}

/// Andrew's monotone chain; collinear points are dropped, so real-valued
/// samples reduce to their two extremes.
fn convex_hull(mut pts: Vec<(Complex64, Sample)>) -> Vec<(Complex64, Sample)> {
    pts.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    pts.dedup_by(|b, a| a.0 == b.0);
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| {
        (a - o).re * (b - o).im - (a - o).im * (b - o).re
    };
    let mut hull: Vec<(Complex64, Sample)> = Vec::with_capacity(2 * pts.len());
    for p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2].0, hull[hull.len() - 1].0, p.0) <= 0.0 {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower
            && cross(hull[hull.len() - 2].0, hull[hull.len() - 1].0, p.0) <= 0.0
        {
            hull.pop();
        }
        hull.push(*p);
    }
    hull.pop();
    hull
}

/// Upper bound, per cell, on the distance from any value of `G` on that
/// cell to any other value of `G`. With `tails`, the two unbounded cells
/// (anchored at the origin) take part as partners.
fn potentials(nodes: &[Node], hull: &Hull, tails: Option<(f64, f64)>) -> Vec<f64> {
    let cells = nodes.len() - 1;
    let verts: Vec<Complex64> = hull.vertices.iter().map(|v| v.0).collect();
    let exact = cells.saturating_mul(verts.len()) <= EXACT_FARTHEST_LIMIT;
    let centre = if verts.is_empty() {
        Complex64::new(0.0, 0.0)
    } else {
        verts.iter().sum::<Complex64>() / verts.len() as f64
    };
    let radius = verts
        .iter()
        .map(|v| (v - centre).norm())
        .fold(0.0, f64::max);
    let farthest = |p: Complex64| {
        if exact {
            verts.iter().map(|v| (p - v).norm()).fold(0.0, f64::max)
        } else {
            (p - centre).norm() + radius
        }
    };
    let mut entries: Vec<(f64, f64)> = (0..cells)
        .into_par_iter()
        .map(|i| {
            let r = farthest(nodes[i].right).max(farthest(nodes[i + 1].left));
            (r.min(hull.diameter), nodes[i].rho)
        })
        .collect();
    if let Some((left, right)) = tails {
        let r0 = farthest(Complex64::new(0.0, 0.0)).min(hull.diameter);
        entries.push((r0, left));
        entries.push((r0, right));
    }
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| entries[a].0.total_cmp(&entries[b].0).then(a.cmp(&b)));
    let m = order.len();
    let mut suffix_rho = vec![0.0f64; m + 1];
    for k in (0..m).rev() {
        suffix_rho[k] = suffix_rho[k + 1].max(entries[order[k]].1);
    }
    let mut pots = vec![0.0; entries.len()];
    let mut prefix = 0.0f64;
    for k in 0..m {
        let (r, rho) = entries[order[k]];
        pots[order[k]] = rho + (r + suffix_rho[k]).max(prefix);
        prefix = prefix.max(r + rho);
    }
    pots
}

/// Turns the extremal sample pair into an open interval `(α, β)` with
/// `G(β−) − G(α)` equal (to rounding) to the sampled difference.
fn attained_interval(nodes: &[Node], pair: (Sample, Sample), window: &Interval) -> Interval {
    let first = nodes[0].x;
    let last = nodes[nodes.len() - 1].x;
    let as_alpha = |s: Sample| match s {
        Sample::Origin => first,
        Sample::Right(i) => nodes[i].x,
        Sample::Left(i) => nodes[i].x.next_down(),
    };
    let as_beta = |s: Sample| match s {
        Sample::Origin => last,
        Sample::Right(i) => nodes[i].x.next_up(),
        Sample::Left(i) => nodes[i].x,
    };
    let (p, q) = pair;
    for (a, b) in [(as_alpha(p), as_beta(q)), (as_alpha(q), as_beta(p))] {
        if a < b {
            return Interval { alpha: a, beta: b };
        }
    }
    *window
}

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transforms::{Bounds, Dataset, Label};

/// Mean angular displacement of the points whose latent radius falls in
/// `[r_lo, r_hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwirlBin {
    pub r_lo: f64,
    pub r_hi: f64,
    pub r_mean: f64,
    pub count: usize,
    pub mean_displacement: f64,
}

impl SwirlBin {
    pub fn center(&self) -> f64 {
        0.5 * (self.r_lo + self.r_hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwirlProfile {
    pub bin_width: f64,
    /// Non-empty bins in increasing radius.
    pub bins: Vec<SwirlBin>,
}

impl SwirlProfile {
    pub fn bin_containing(&self, r: f64) -> Option<&SwirlBin> {
        self.bins.iter().find(|b| b.r_lo <= r && r < b.r_hi)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r_lo,r_hi,r_mean,count,mean_displacement\n");
        for b in &self.bins {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{},{:.16e}",
                b.r_lo, b.r_hi, b.r_mean, b.count, b.mean_displacement
            );
        }
        out
    }
}

/// Angular displacement `arg(Z'_i) - arg(Z_i)` averaged per radius bin.
///
/// Bins have width `cutoff / bins_inside`, so `cutoff` is a bin edge, and
/// continue past the cutoff to the largest latent radius. Single angles are
/// only known modulo `2π`, so the profile is unwrapped from the outside in:
/// each point is placed on the branch nearest to the mean of the next bin
/// out, starting from 0 beyond the largest radius.
pub fn swirl_profile(
    z: &Dataset,
    zp: &Dataset,
    cutoff: f64,
    bins_inside: usize,
) -> Result<SwirlProfile> {
    if z.len() != zp.len() {
        return Err(Error::Pairing {
            left: z.len(),
            right: zp.len(),
        });
    }
    if !(cutoff > 0.0 && cutoff.is_finite()) || bins_inside == 0 {
        return Err(Error::InvalidParameter {
            name: "swirl_bins",
            constraint: "swirl_bins ≥ 1 and cutoff > 0",
            value: bins_inside as f64,
        });
    }
    let width = cutoff / bins_inside as f64;
    let r_max = z.points().iter().map(|p| p.norm()).fold(0.0, f64::max);
    let total_bins = ((r_max / width).floor() as usize + 1).max(bins_inside);

    let mut members: Vec<Vec<(f64, f64)>> = vec![Vec::new(); total_bins];
    for (a, b) in z.points().iter().zip(zp.points()) {
        let r = a.norm();
        let idx = ((r / width).floor() as usize).min(total_bins - 1);
        let mut d = b.angle() - a.angle();
        if d > PI {
            d -= TAU;
        } else if d <= -PI {
            d += TAU;
        }
        members[idx].push((r, d));
    }

    let mut bins = Vec::new();
    let mut reference = 0.0;
    for (idx, pts) in members.iter().enumerate().rev() {
        if pts.is_empty() {
            continue;
        }
        let m = pts.len() as f64;
        let mean_displacement = pts
            .iter()
            .map(|&(_, d)| d + TAU * ((reference - d) / TAU).round())
            .sum::<f64>()
            / m;
        reference = mean_displacement;
        bins.push(SwirlBin {
            r_lo: idx as f64 * width,
            r_hi: (idx + 1) as f64 * width,
            r_mean: pts.iter().map(|&(r, _)| r).sum::<f64>() / m,
            count: pts.len(),
            mean_displacement,
        });
    }
    bins.reverse();
    Ok(SwirlProfile {
        bin_width: width,
        bins,
    })
}

/// Files emitted for the point-cloud figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureBundle {
    pub x_cloud: PathBuf,
    pub z_cloud: PathBuf,
    pub zprime_cloud: PathBuf,
    pub svgs: Vec<PathBuf>,
    pub swirl_profile_path: PathBuf,
    pub swirl_profile: SwirlProfile,
}

/// Standalone SVG scatter plot of a point cloud.
///
/// Latent clouds are drawn on `[-1.05, 1.05]^2`; observed clouds on their
/// bounding box padded by 5% on each side.
pub fn render_svg(d: &Dataset) -> String {
    const SIZE: f64 = 600.0;
    const MARGIN: f64 = 40.0;
    let view = match d.label() {
        Label::LatentZ | Label::LatentZprime => {
            Bounds::new((-1.05, -1.05).into(), (1.05, 1.05).into())
        }
        Label::ObservedX => {
            let b = d.bounds();
            let (px, py) = (0.05 * b.width(0).max(1e-9), 0.05 * b.width(1).max(1e-9));
            Bounds::new(
                (b.lo.x1 - px, b.lo.x2 - py).into(),
                (b.hi.x1 + px, b.hi.x2 + py).into(),
            )
        }
    };
    let plot = SIZE - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + (x - view.lo.x1) / view.width(0) * plot;
    let sy = |y: f64| MARGIN + (view.hi.x2 - y) / view.width(1) * plot;
    let (c1, c2) = d.label().columns();
    let colour = match d.label() {
        Label::ObservedX => "#4c72b0",
        Label::LatentZ => "#55a868",
        Label::LatentZprime => "#c44e52",
    };

    let mut svg = String::with_capacity(64 * d.len() + 1024);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{} (n = {})</text>"#,
        SIZE / 2.0,
        d.label().file_stem(),
        d.len()
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot}" height="{plot}" fill="none" stroke="black"/>"#
    );
    if view.lo.x1 < 0.0 && view.hi.x1 > 0.0 {
        let x0 = sx(0.0);
        let _ = writeln!(
            svg,
            r##"<line x1="{x0:.2}" y1="{MARGIN}" x2="{x0:.2}" y2="{}" stroke="#bbbbbb"/>"##,
            SIZE - MARGIN
        );
    }
    if view.lo.x2 < 0.0 && view.hi.x2 > 0.0 {
        let y0 = sy(0.0);
        let _ = writeln!(
            svg,
            r##"<line x1="{MARGIN}" y1="{y0:.2}" x2="{}" y2="{y0:.2}" stroke="#bbbbbb"/>"##,
            SIZE - MARGIN
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{c1}</text>"#,
        SIZE / 2.0,
        SIZE - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 14 {})">{c2}</text>"#,
        SIZE / 2.0,
        SIZE / 2.0
    );
    let _ = writeln!(svg, r#"<g fill="{colour}" fill-opacity="0.35">"#);
    for p in d.points() {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="0.8"/>"#,
            sx(p.x1),
            sy(p.x2)
        );
    }
    svg.push_str("</g>\n</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{apply_pipeline, sample_uniform_square, Mixing2, MpaParams, Point2};

    #[test]
    fn profile_follows_the_rotation_angle() {
        let p = MpaParams::new(3.6, 0.9).unwrap();
        let z = sample_uniform_square(50_000, 8).unwrap();
        let out = apply_pipeline(&Mixing2::identity(), &p, &z).unwrap();
        let prof = swirl_profile(&z, &out.zprime, 0.9, 100).unwrap();
        for b in &prof.bins {
            let want = p.angle_at(b.r_mean);
            assert!((b.mean_displacement - want).abs() < 1e-9, "{b:?} vs {want}");
        }
        // Angles below -π near the origin must be unwrapped, not folded back.
        assert!(prof.bins[0].mean_displacement < -PI);
    }

    #[test]
    fn profile_covers_inside_and_outside_the_cutoff() {
        let z = sample_uniform_square(10_000, 2).unwrap();
        let prof = swirl_profile(&z, &z, 0.9, 18).unwrap();
        assert!((prof.bin_width - 0.05).abs() < 1e-15);
        assert!(prof.bins.first().unwrap().r_lo < 0.05);
        assert!(prof.bins.last().unwrap().r_hi > 1.3);
        assert!(prof.bins.iter().all(|b| b.mean_displacement == 0.0));
        assert_eq!(prof.bins.iter().map(|b| b.count).sum::<usize>(), 10_000);
    }

    #[test]
    fn svg_has_one_marker_per_point() {
        let d = Dataset::new(
            vec![Point2::new(0.0, 0.0), Point2::new(1.0, -1.0)],
            Label::LatentZ,
            0,
        )
        .unwrap();
        let svg = render_svg(&d);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 2);
        // (1, -1) sits near the lower-right corner of the [-1.05, 1.05] frame.
        assert!(svg.contains(r#"cx="547.62" cy="547.62""#), "{svg}");
    }
}

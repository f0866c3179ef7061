//! Absolute pair rates: pump normalisation, spectral density, total rate for
//! the non-collinear geometry, thin-crystal closed forms and the dependence
//! on the pump/collection waist ratio.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{angular_frequency, EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::{self, CrystalSpec, Wave, DEFAULT_DEGENERACY_EPSILON};
use crate::modes::{self, GaussianMode, OverlapGeometry, Role};
use crate::numerics::sinc;

const WAIST_MATCH: f64 = 1e-12;
const GOLDEN_TOL: f64 = 1e-9;

/// How the collection angle quoted outside the crystal enters the geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleConvention {
    /// Refract the external angle into the crystal with each beam's index.
    InternalPhysics,
    /// Use the external angle unchanged as the in-crystal angle.
    PaperExternalAsInternal,
}

/// Which daughter photon is the ordinary wave in type-II conversion. The
/// pump and the other daughter are extraordinary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarizationAssignment {
    SignalOrdinary,
    SignalExtraordinary,
}

/// Experiment description before indices and angles are resolved. SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSetup {
    pub pump_power: f64,
    pub pump_wavelength: f64,
    pub pump_waist: f64,
    pub signal_waist: f64,
    pub idler_waist: f64,
    pub crystal: CrystalSpec,
    pub external_collection_angle: f64,
    pub angle_convention: AngleConvention,
    pub polarization_assignment: PolarizationAssignment,
}

/// Fully resolved source: three modes with indices and internal angles.
///
/// Signal and idler run at the degenerate wavelength `2λ_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceConfig {
    /// W
    pub pump_power: f64,
    pub pump: GaussianMode,
    pub signal: GaussianMode,
    pub idler: GaussianMode,
    pub crystal: CrystalSpec,
    /// rad, outside the crystal
    pub external_collection_angle: f64,
    pub angle_convention: AngleConvention,
    pub polarization_assignment: PolarizationAssignment,
    /// Threshold for the dispersion denominators, index units.
    pub degeneracy_epsilon: f64,
}

impl SourceConfig {
    pub fn new(setup: SourceSetup) -> Result<Self> {
        let SourceSetup {
            pump_power,
            pump_wavelength,
            pump_waist,
            signal_waist,
            idler_waist,
            crystal,
            external_collection_angle,
            angle_convention,
            polarization_assignment,
        } = setup;

        let daughter_wavelength = 2.0 * pump_wavelength;
        let n_pump = crystal.index_extraordinary(pump_wavelength, crystal.theta_c)?;
        let n_o = crystal.index_ordinary(daughter_wavelength)?;
        let n_e = crystal.index_extraordinary(daughter_wavelength, crystal.theta_c)?;
        let (n_signal, n_idler) = match polarization_assignment {
            PolarizationAssignment::SignalOrdinary => (n_o, n_e),
            PolarizationAssignment::SignalExtraordinary => (n_e, n_o),
        };
        let inside = |n: f64| match angle_convention {
            AngleConvention::InternalPhysics => materials::internal_angle(external_collection_angle, n),
            AngleConvention::PaperExternalAsInternal => {
                // Same domain check as the refracting branch.
                materials::internal_angle(external_collection_angle, 1.0)
            }
        };
        let theta_signal = inside(n_signal)?;
        let theta_idler = inside(n_idler)?;

        let config = SourceConfig {
            pump_power,
            pump: GaussianMode::new(Role::Pump, pump_waist, pump_wavelength, 0.0, n_pump)?,
            signal: GaussianMode::new(Role::Signal, signal_waist, daughter_wavelength, theta_signal, n_signal)?,
            idler: GaussianMode::new(Role::Idler, idler_waist, daughter_wavelength, theta_idler, n_idler)?,
            crystal,
            external_collection_angle,
            angle_convention,
            polarization_assignment,
            degeneracy_epsilon: DEFAULT_DEGENERACY_EPSILON,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.pump_power > 0.0 && self.pump_power.is_finite()) {
            return Err(Error::invalid("pump power", format!("{} W must be > 0", self.pump_power)));
        }
        let degenerate = 2.0 * self.pump.lambda_vac;
        for mode in [&self.signal, &self.idler] {
            if ((mode.lambda_vac - degenerate) / degenerate).abs() > 1e-12 {
                return Err(Error::invalid(
                    "daughter wavelength",
                    format!(
                        "{:?} at {:e} m; only degenerate operation at 2λ_p = {degenerate:e} m is supported",
                        mode.role, mode.lambda_vac
                    ),
                ));
            }
        }
        if self.pump.role != Role::Pump || self.signal.role != Role::Signal || self.idler.role != Role::Idler {
            return Err(Error::invalid("mode roles", "expected pump, signal and idler"));
        }
        Ok(())
    }

    pub fn omega_pump(&self) -> f64 {
        angular_frequency(self.pump.lambda_vac)
    }

    pub fn geometry(&self) -> Result<OverlapGeometry> {
        modes::geometry_coefficients(&self.pump, &self.signal, &self.idler, self.crystal.length)
    }

    /// Signed `n_i cosθ_i − n_s cosθ_s`, checked against the degeneracy epsilon.
    pub fn dispersion_difference(&self) -> Result<f64> {
        Ok(materials::dispersion_factor_with_epsilon(
            self.signal.n,
            self.idler.n,
            self.signal.theta,
            self.idler.theta,
            self.degeneracy_epsilon,
        )? * SPEED_OF_LIGHT)
    }

    /// `Δk_z` for a signal at `omega_s` and the idler at `ω_p − ω_s`.
    pub fn delta_k_z(&self, omega_s: f64) -> Result<f64> {
        let omega_p = self.omega_pump();
        let signal = Wave {
            n: self.signal.n,
            omega: omega_s,
            theta: self.signal.theta,
        };
        let idler = Wave {
            n: self.idler.n,
            omega: omega_p - omega_s,
            theta: self.idler.theta,
        };
        materials::delta_k_z(signal, idler, self.pump.n, omega_p)
    }

    /// Same source with signal and idler along the pump.
    pub fn collinear(&self) -> SourceConfig {
        let mut c = self.clone();
        c.signal.theta = 0.0;
        c.idler.theta = 0.0;
        c.external_collection_angle = 0.0;
        c
    }

    fn equal_waists(&self) -> Result<f64> {
        let w = self.pump.waist;
        let matches = |other: f64| ((other - w) / w).abs() <= WAIST_MATCH;
        if matches(self.signal.waist) && matches(self.idler.waist) {
            Ok(w)
        } else {
            Err(Error::UnequalWaists {
                pump: w,
                signal: self.signal.waist,
                idler: self.idler.waist,
            })
        }
    }
}

/// Squared pump amplitude `|E_p⁰|² = α_p²·2P/(ε₀ n_p c)`, V²/m².
pub fn pump_amplitude_sq(power: f64, pump_waist: f64, n_pump: f64) -> f64 {
    modes::normalization_alpha(pump_waist).powi(2) * 2.0 * power / (EPSILON_0 * n_pump * SPEED_OF_LIGHT)
}

/// Pair rate per unit signal angular frequency, pairs/s per rad/s.
///
/// Assumes perfect transverse phase matching (`Δk_y = 0`); `Δk_z` follows
/// from the fixed indices of `config` and the exact `ω_s·ω_i` is kept.
pub fn spectral_rate_density(config: &SourceConfig, omega_s: f64) -> Result<f64> {
    let geom = config.geometry()?;
    spectral_rate_density_with(config, &geom, omega_s)
}

fn spectral_rate_density_with(config: &SourceConfig, geom: &OverlapGeometry, omega_s: f64) -> Result<f64> {
    let omega_p = config.omega_pump();
    if !(omega_s > 0.0 && omega_s < omega_p) {
        return Err(Error::invalid(
            "omega_s",
            format!("{omega_s:e} rad/s must lie in (0, ω_p = {omega_p:e})"),
        ));
    }
    let omega_i = omega_p - omega_s;
    let dk_z = config.delta_k_z(omega_s)?;
    let phi = modes::overlap_phi(geom, 0.0, dk_z)?;
    let d = config.crystal.effective_nonlinearity();
    let field = d * config.signal.alpha() * config.idler.alpha() * phi / SPEED_OF_LIGHT;
    let e_sq = pump_amplitude_sq(config.pump_power, config.pump.waist, config.pump.n);
    Ok(field * field * e_sq * omega_s * omega_i / (2.0 * PI * config.signal.n * config.idler.n))
}

/// One sample of the signal spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSample {
    /// rad/s
    pub omega_s: f64,
    /// pairs/s per rad/s
    pub density: f64,
}

/// Sampling window for spectra, in units of the phase mismatch `Δφ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumGrid {
    /// Samples cover `Δφ ∈ [−half_span, half_span]` around the phase-matched point.
    pub half_span: f64,
    pub points: usize,
}

impl Default for SpectrumGrid {
    fn default() -> Self {
        SpectrumGrid {
            half_span: 60.0,
            points: 1201,
        }
    }
}

/// Results of [`total_rate`]. Rates in pairs/s at the configured pump power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub xi: f64,
    pub s: f64,
    pub rate_total: f64,
    /// Thin-crystal closed form for the collinear counterpart; absent when
    /// the collinear index pair is degenerate.
    pub rate_thin: Option<f64>,
    pub spectral_samples: Vec<SpectralSample>,
    /// Pairs per pump photon per mm of crystal.
    pub efficiency_per_mm: f64,
    /// Per mm and per steradian of collection solid angle, when one is given.
    pub efficiency_per_mm_sr: Option<f64>,
    pub warnings: Vec<String>,
    pub d_eff: f64,
    pub n_pump: f64,
    pub n_signal: f64,
    pub n_idler: f64,
    pub theta_signal: f64,
    pub theta_idler: f64,
    /// Signed `n_i cosθ_i − n_s cosθ_s`.
    pub dispersion_difference: f64,
    /// `Δφ` at the degenerate frequency `ω_p/2`.
    pub degenerate_delta_phi: f64,
    /// Signal frequency where `Δk_z = 0`, if inside `(0, ω_p)`.
    pub phase_matched_omega_s: Option<f64>,
}

/// Total pair rate for equal waists, with spectral samples and efficiencies.
pub fn total_rate(config: &SourceConfig) -> Result<RateReport> {
    total_rate_with_grid(config, &SpectrumGrid::default())
}

pub fn total_rate_with_grid(config: &SourceConfig, grid: &SpectrumGrid) -> Result<RateReport> {
    config.validate()?;
    let waist = config.equal_waists()?;
    let mut warnings = Vec::new();
    if (config.signal.theta - config.idler.theta).abs() > 1e-12 {
        warnings.push(format!(
            "signal and idler internal angles differ ({:.6}° vs {:.6}°); rate uses the general (1 + cos²θ_i + cos²θ_s) form",
            config.signal.theta.to_degrees(),
            config.idler.theta.to_degrees()
        ));
    }
    if config.angle_convention == AngleConvention::InternalPhysics && config.external_collection_angle > 0.0 {
        warnings.push(format!(
            "internal_physics convention: {:.4}° external refracts to {:.4}°/{:.4}° inside; Ξ differs from the value obtained by using the external angle directly",
            config.external_collection_angle.to_degrees(),
            config.signal.theta.to_degrees(),
            config.idler.theta.to_degrees()
        ));
    }

    let geom = config.geometry()?;
    let s = modes::spectral_integral_s(geom.xi)?;
    let dispersion = config.dispersion_difference()?;
    if dispersion < 0.0 {
        warnings.push(format!(
            "n_i cosθ_i − n_s cosθ_s = {dispersion:.6} is negative; its magnitude is used (sign only reflects signal/idler labelling)"
        ));
    }

    let d = config.crystal.effective_nonlinearity();
    let omega_p = config.omega_pump();
    let (l, p) = (config.crystal.length, config.pump_power);
    let (n_p, n_s, n_i) = (config.pump.n, config.signal.n, config.idler.n);
    let angular = 1.0 + config.idler.theta.cos().powi(2) + config.signal.theta.cos().powi(2);
    let rate_total = 4.0 * d * d * p * l * omega_p * omega_p
        / (3.0 * PI * n_p * n_s * n_i * EPSILON_0 * SPEED_OF_LIGHT.powi(2) * (PI * waist * waist) * angular)
        / dispersion.abs()
        * s;

    let rate_thin = match thin_crystal_rates(&config.collinear()) {
        Ok(thin) => Some(thin.total),
        Err(Error::DegenerateDispersion { .. }) => None,
        Err(e) => return Err(e),
    };

    // Spectrum around the frequency where Δk_z vanishes.
    let dk_z0 = config.delta_k_z(omega_p / 2.0)?;
    let degenerate_delta_phi = dk_z0 * l / 2.0;
    let slope = -dispersion / SPEED_OF_LIGHT;
    let matched = omega_p / 2.0 - dk_z0 / slope;
    let phase_matched_omega_s = (matched > 0.0 && matched < omega_p).then_some(matched);
    if degenerate_delta_phi.abs() > PI / 2.0 {
        warnings.push(match phase_matched_omega_s {
            Some(w) => format!(
                "degenerate frequency is not longitudinally phase matched (Δφ = {degenerate_delta_phi:.3}); spectrum centred on ω_s = {w:.6e} rad/s ({:.3} nm)",
                2.0 * PI * SPEED_OF_LIGHT / w * 1e9
            ),
            None => format!(
                "no phase-matched signal frequency in (0, ω_p) (Δφ at degeneracy = {degenerate_delta_phi:.3}); spectrum centred on ω_p/2"
            ),
        });
    }
    let centre = phase_matched_omega_s.unwrap_or(omega_p / 2.0);
    let spectral_samples = spectral_samples(config, &geom, centre, slope, grid)?;

    let efficiency_per_mm = rate_total * HBAR * omega_p / (p * l * 1e3);

    Ok(RateReport {
        xi: geom.xi,
        s,
        rate_total,
        rate_thin,
        spectral_samples,
        efficiency_per_mm,
        efficiency_per_mm_sr: None,
        warnings,
        d_eff: d,
        n_pump: n_p,
        n_signal: n_s,
        n_idler: n_i,
        theta_signal: config.signal.theta,
        theta_idler: config.idler.theta,
        dispersion_difference: dispersion,
        degenerate_delta_phi,
        phase_matched_omega_s,
    })
}

fn spectral_samples(
    config: &SourceConfig,
    geom: &OverlapGeometry,
    centre: f64,
    slope: f64,
    grid: &SpectrumGrid,
) -> Result<Vec<SpectralSample>> {
    if grid.points < 2 || !(grid.half_span > 0.0) {
        return Err(Error::invalid("spectrum grid", "need ≥ 2 points and a positive span"));
    }
    let omega_p = config.omega_pump();
    let step = 2.0 * grid.half_span / (grid.points - 1) as f64;
    let mut samples = (0..grid.points)
        .map(|j| {
            let delta_phi = -grid.half_span + step * j as f64;
            let dk = 2.0 * delta_phi / config.crystal.length;
            centre + dk / slope
        })
        .filter(|&w| w > 0.0 && w < omega_p)
        .map(|omega_s| {
            Ok(SpectralSample {
                omega_s,
                density: spectral_rate_density_with(config, geom, omega_s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    samples.sort_by(|a, b| a.omega_s.total_cmp(&b.omega_s));
    Ok(samples)
}

/// Closed-form thin-crystal rates for a collinear type-II source.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinCrystalRates {
    config: SourceConfig,
    peak: f64,
    /// `R̃_T`, pairs/s.
    pub total: f64,
}

impl ThinCrystalRates {
    /// `dR̃/dω_s` at `omega_s`, pairs/s per rad/s.
    pub fn spectral_density(&self, omega_s: f64) -> Result<f64> {
        let dk_z = self.config.delta_k_z(omega_s)?;
        let s = sinc(dk_z * self.config.crystal.length / 2.0);
        Ok(self.peak * s * s)
    }

    /// Density at `Δk_z = 0`.
    pub fn peak_density(&self) -> f64 {
        self.peak
    }
}

pub fn thin_crystal_rates(config: &SourceConfig) -> Result<ThinCrystalRates> {
    config.validate()?;
    if config.signal.theta != 0.0 || config.idler.theta != 0.0 {
        return Err(Error::NotCollinear {
            theta_s: config.signal.theta,
            theta_i: config.idler.theta,
        });
    }
    let waist = config.equal_waists()?;
    let dispersion = config.dispersion_difference()?;

    let d = config.crystal.effective_nonlinearity();
    let omega_p = config.omega_pump();
    let (l, p) = (config.crystal.length, config.pump_power);
    let indices = config.pump.n * config.signal.n * config.idler.n;
    let area = PI * waist * waist;
    let peak = 2.0 * d * d * omega_p * omega_p * p * l * l
        / (9.0 * PI * indices * EPSILON_0 * SPEED_OF_LIGHT.powi(3) * area);
    let total = 4.0 * d * d * p * l * omega_p * omega_p
        / (9.0 * indices * EPSILON_0 * area * dispersion.abs() * SPEED_OF_LIGHT.powi(2));
    Ok(ThinCrystalRates {
        config: config.clone(),
        peak,
        total,
    })
}

/// Relative thin-crystal rate versus waists,
/// `1/(W_p²W_s²W_i²(W_p⁻² + W_s⁻² + W_i⁻²)²)`.
pub fn waist_scaling(pump_waist: f64, signal_waist: f64, idler_waist: f64) -> f64 {
    let (p2, s2, i2) = (pump_waist.powi(2), signal_waist.powi(2), idler_waist.powi(2));
    let sum = 1.0 / p2 + 1.0 / s2 + 1.0 / i2;
    1.0 / (p2 * s2 * i2 * sum * sum)
}

/// Rate versus `γ = W_p/W` at fixed collection waist `W`, up to `1/W²`.
fn gamma_profile(gamma: f64) -> f64 {
    1.0 / (1.0 / gamma + 2.0 * gamma).powi(2)
}

/// Pump-to-collection waist ratio that maximises the rate, by golden-section
/// search on `[0.05, 5]`.
pub fn optimal_gamma() -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.05, 5.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (gamma_profile(x1), gamma_profile(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = gamma_profile(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = gamma_profile(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Rate at `gamma` relative to the optimum.
pub fn relative_gamma_rate(gamma: f64) -> f64 {
    gamma_profile(gamma) / gamma_profile(optimal_gamma())
}

/// Uniform sweep of the relative rate over `[gamma_min, gamma_max]`.
pub fn gamma_sweep(gamma_min: f64, gamma_max: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    if !(gamma_min > 0.0 && gamma_max > gamma_min && gamma_max.is_finite()) {
        return Err(Error::invalid(
            "gamma range",
            format!("need 0 < gamma_min < gamma_max, got [{gamma_min}, {gamma_max}]"),
        ));
    }
    if points < 2 {
        return Err(Error::invalid("points", format!("{points} must be ≥ 2")));
    }
    let peak = gamma_profile(optimal_gamma());
    let step = (gamma_max - gamma_min) / (points - 1) as f64;
    Ok((0..points)
        .map(|j| {
            let gamma = if j + 1 == points { gamma_max } else { gamma_min + step * j as f64 };
            (gamma, gamma_profile(gamma) / peak)
        })
        .collect())
}

/// Experiment-specific factors applied only when comparing with measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub pair_to_singles_ratio: f64,
    /// Number of emission paths collected (2 for crossing-cone sources).
    pub decay_paths: f64,
    /// sr
    pub collection_solid_angle: Option<f64>,
}

/// Model figures in the units experiments usually quote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentComparison {
    /// `decay_paths · ratio · R_T` per mW of pump, pairs/(mW·s).
    pub observable_rate_per_mw: f64,
    pub rate_total_per_mw: f64,
    pub efficiency_per_mm: f64,
    pub efficiency_per_mm_sr: Option<f64>,
}

pub fn compare_experiment(
    config: &SourceConfig,
    report: &RateReport,
    params: &ExperimentParams,
) -> Result<ExperimentComparison> {
    if !(params.pair_to_singles_ratio > 0.0 && params.pair_to_singles_ratio <= 1.0) {
        return Err(Error::invalid(
            "pair_to_singles_ratio",
            format!("{} must lie in (0, 1]", params.pair_to_singles_ratio),
        ));
    }
    if !(params.decay_paths >= 1.0) {
        return Err(Error::invalid("decay_paths", format!("{} must be ≥ 1", params.decay_paths)));
    }
    if let Some(sr) = params.collection_solid_angle {
        if !(sr > 0.0) {
            return Err(Error::invalid("collection_solid_angle", format!("{sr} sr must be > 0")));
        }
    }
    let per_mw = report.rate_total / (config.pump_power * 1e3);
    Ok(ExperimentComparison {
        observable_rate_per_mw: params.decay_paths * params.pair_to_singles_ratio * per_mw,
        rate_total_per_mw: per_mw,
        efficiency_per_mm: report.efficiency_per_mm,
        efficiency_per_mm_sr: params.collection_solid_angle.map(|sr| report.efficiency_per_mm / sr),
    })
}

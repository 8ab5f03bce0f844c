//! Flight-schedule interchange: strict CSV parsing, deterministic synthetic
//! generation, and the capacity-profile file format.
//!
//! # Schedule CSV
//!
//! ```text
//! flight_id,departure,seats
//! F1,08:00,180
//! F2,08:10,160
//! ```
//!
//! `departure` is wall-clock `HH:MM` (parsed to minutes after midnight),
//! `seats` a positive integer, and `flight_id` must be unique. Parsing is
//! strict: any malformed field fails with its line number rather than being
//! skipped.
//!
//! # Capacity-profile CSV
//!
//! ```text
//! slot,capacity
//! 0,900
//! 1,900
//! ```
//!
//! One row per slot, slot indices consecutive from zero.

use std::collections::HashSet;
use std::io::{Read, Write as _};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::CapacityProfile;

/// One scheduled departure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flight {
    pub id: String,
    /// Departure time in minutes after midnight, in `0..1440`.
    pub departure_minute: u32,
    pub seats: u32,
}

/// A day's departures plus a free-form label describing where they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub flights: Vec<Flight>,
    pub label: String,
}

impl Schedule {
    pub fn total_seats(&self) -> u64 {
        self.flights.iter().map(|f| f.seats as u64).sum()
    }
}

/// Errors from schedule and capacity-profile I/O.
#[derive(Debug, thiserror::Error)]
pub enum ScheduleError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
}

fn parse_err(line: u64, message: impl Into<String>) -> ScheduleError {
    ScheduleError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses wall-clock `HH:MM` into minutes after midnight.
pub fn parse_hhmm(text: &str) -> Result<u32, String> {
    let (h, m) = text
        .split_once(':')
        .ok_or_else(|| format!("expected HH:MM, found `{text}`"))?;
    let hour: u32 = h.parse().map_err(|_| format!("bad hour in `{text}`"))?;
    let minute: u32 = m.parse().map_err(|_| format!("bad minute in `{text}`"))?;
    if hour > 23 {
        return Err(format!("hour out of range in `{text}`"));
    }
    if minute > 59 {
        return Err(format!("minute out of range in `{text}`"));
    }
    Ok(hour * 60 + minute)
}

fn format_hhmm(minute: u32) -> String {
    format!("{:02}:{:02}", minute / 60, minute % 60)
}

/// Reads a schedule from the CSV format in the module docs.
pub fn parse_schedule(path: &Path) -> Result<Schedule, ScheduleError> {
    let file = std::fs::File::open(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "schedule".to_string());
    parse_schedule_reader(file, &label)
}

/// Reads a schedule from any reader; `label` names the source in reports.
pub fn parse_schedule_reader<R: Read>(reader: R, label: &str) -> Result<Schedule, ScheduleError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    {
        let headers = csv_reader.headers()?;
        let expected = ["flight_id", "departure", "seats"];
        let found: Vec<&str> = headers.iter().collect();
        if found != expected {
            return Err(parse_err(
                1,
                format!(
                    "expected header `flight_id,departure,seats`, found `{}`",
                    found.join(",")
                ),
            ));
        }
    }
    let mut flights = Vec::new();
    let mut seen = HashSet::new();
    for record in csv_reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 3 {
            return Err(parse_err(
                line,
                format!("expected 3 fields, found {}", record.len()),
            ));
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(parse_err(line, "empty flight_id"));
        }
        if !seen.insert(id.clone()) {
            return Err(parse_err(line, format!("duplicate flight_id `{id}`")));
        }
        let departure_minute = parse_hhmm(&record[1]).map_err(|m| parse_err(line, m))?;
        let seats: u32 = record[2]
            .parse()
            .map_err(|_| parse_err(line, format!("bad seats `{}`", &record[2])))?;
        if seats == 0 {
            return Err(parse_err(line, "seats must be positive"));
        }
        flights.push(Flight {
            id,
            departure_minute,
            seats,
        });
    }
    Ok(Schedule {
        flights,
        label: label.to_string(),
    })
}

/// Writes a schedule in the interchange CSV format. `parse_schedule` of the
/// result reproduces the flight list exactly.
pub fn write_schedule(schedule: &Schedule, path: &Path) -> Result<(), ScheduleError> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["flight_id", "departure", "seats"])?;
    for flight in &schedule.flights {
        writer.write_record([
            flight.id.as_str(),
            &format_hhmm(flight.departure_minute),
            &flight.seats.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Shape of the synthetic departure-time distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PeakSpec {
    /// Departures uniform over the day.
    Uniform,
    /// A Gaussian morning rush on top of a uniform background: each flight
    /// departs within the peak with probability `weight`.
    MorningPeak {
        center_minute: u32,
        spread_minutes: f64,
        weight: f64,
    },
}

impl PeakSpec {
    /// Morning rush peaking at 07:30, calibrated so that a day of ~49k
    /// passengers overloads a 900-per-slot screening lane for a couple of
    /// hours without anyone waiting longer than the hour they arrive early.
    pub fn default_morning() -> Self {
        PeakSpec::MorningPeak {
            center_minute: 450,
            spread_minutes: 150.0,
            weight: 0.35,
        }
    }
}

/// Generates a deterministic synthetic schedule: `num_flights` departures with
/// seats that sum to `total_seats` exactly. The same seed always produces the
/// same schedule, byte for byte.
pub fn generate_synthetic(
    seed: u64,
    num_flights: u32,
    total_seats: u64,
    peak: &PeakSpec,
) -> Schedule {
    assert!(num_flights > 0, "need at least one flight");
    assert!(
        total_seats >= num_flights as u64,
        "every flight needs at least one seat"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flights = Vec::with_capacity(num_flights as usize);
    for i in 0..num_flights {
        let departure_minute = match *peak {
            PeakSpec::Uniform => rng.gen_range(0..1440),
            PeakSpec::MorningPeak {
                center_minute,
                spread_minutes,
                weight,
            } => {
                if rng.gen::<f64>() < weight {
                    let z = standard_normal(&mut rng);
                    let minute = center_minute as f64 + z * spread_minutes;
                    minute.round().clamp(0.0, 1439.0) as u32
                } else {
                    rng.gen_range(0..1440)
                }
            }
        };
        flights.push(Flight {
            id: format!("SY{:04}", i + 1),
            departure_minute,
            seats: 1,
        });
    }

    // Partition the remaining seats by random weights, largest remainders
    // first, so the total is hit exactly and every flight keeps its base seat.
    let weights: Vec<u64> = (0..num_flights).map(|_| rng.gen_range(60..=300)).collect();
    let weight_sum: u128 = weights.iter().map(|&w| w as u128).sum();
    let spare = total_seats - num_flights as u64;
    let mut allocated: u64 = 0;
    let mut remainders: Vec<(u128, usize)> = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        let exact = spare as u128 * w as u128;
        let share = (exact / weight_sum) as u64;
        flights[i].seats += share as u32;
        allocated += share;
        remainders.push((exact % weight_sum, i));
    }
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, i) in remainders.iter().take((spare - allocated) as usize) {
        flights[i].seats += 1;
    }

    flights.sort_by(|a, b| {
        a.departure_minute
            .cmp(&b.departure_minute)
            .then(a.id.cmp(&b.id))
    });
    Schedule {
        flights,
        label: format!("synthetic-{seed}"),
    }
}

/// Marsaglia polar method; deterministic given the generator state. The spare
/// variate of each pair is discarded for simplicity.
fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u = rng.gen_range(-1.0f64..1.0);
        let v = rng.gen_range(-1.0f64..1.0);
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

pub(crate) fn sample_normal<R: Rng>(rng: &mut R, mean: f64, sd: f64) -> f64 {
    mean + sd * standard_normal(rng)
}

/// Reads a per-slot capacity profile (format in the module docs). The file
/// must list every slot `0..num_slots` exactly once, in order.
pub fn read_capacity_profile(
    path: &Path,
    num_slots: usize,
) -> Result<CapacityProfile, ScheduleError> {
    let file = std::fs::File::open(path)?;
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    {
        let headers = csv_reader.headers()?;
        let found: Vec<&str> = headers.iter().collect();
        if found != ["slot", "capacity"] {
            return Err(parse_err(
                1,
                format!(
                    "expected header `slot,capacity`, found `{}`",
                    found.join(",")
                ),
            ));
        }
    }
    let mut capacities = Vec::with_capacity(num_slots);
    for record in csv_reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected 2 fields, found {}", record.len()),
            ));
        }
        let slot: usize = record[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad slot `{}`", &record[0])))?;
        if slot != capacities.len() {
            return Err(parse_err(
                line,
                format!("expected slot {}, found {slot}", capacities.len()),
            ));
        }
        let capacity: u64 = record[1]
            .parse()
            .map_err(|_| parse_err(line, format!("bad capacity `{}`", &record[1])))?;
        capacities.push(capacity);
    }
    if capacities.len() != num_slots {
        return Err(parse_err(
            0,
            format!("expected {num_slots} slots, found {}", capacities.len()),
        ));
    }
    Ok(CapacityProfile::new(capacities))
}

/// Writes a capacity profile in the same format `read_capacity_profile` accepts.
pub fn write_capacity_profile(profile: &CapacityProfile, path: &Path) -> Result<(), ScheduleError> {
    let mut out = String::from("slot,capacity\n");
    for (slot, &capacity) in profile.per_slot().iter().enumerate() {
        out.push_str(&format!("{slot},{capacity}\n"));
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(out.as_bytes())?;
    Ok(())
}

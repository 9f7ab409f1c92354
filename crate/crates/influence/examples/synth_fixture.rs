//! Writes the synthetic crash-record fixture used by the end-to-end tests.
//!
//! Ten binary features in the column layout of the nassCDS extract, plus
//! three prediction columns standing in for different classifiers. Values
//! are drawn from a seeded generator so the file is reproducible; they carry
//! no information about real crashes.
//!
//!     cargo run -p apriori-influence --example synth_fixture -- OUT.csv

use std::io::Write;

use apriori_influence_core::rng::{below, generator, Generator};

const NAMES: [&str; 10] = [
    "dvcat", "airbag", "seatbelt", "frontal", "sex", "abcat", "occRole", "deploy", "ageOFocc", "age",
];
const ROWS: usize = 3000;
const SEED: u64 = 20_240_615;

fn chance(rng: &mut Generator, per_mille: u64) -> u8 {
    u8::from(below(rng, 1000) < per_mille)
}

fn draw(rng: &mut Generator) -> [u8; 10] {
    // severity drives impact speed, frontal impact and occupant age
    let severe = chance(rng, 350);
    let dvcat = if severe == 1 {
        chance(rng, 900)
    } else {
        chance(rng, 150)
    };
    let frontal = if severe == 1 {
        chance(rng, 750)
    } else {
        chance(rng, 450)
    };
    let age_of_occ = if severe == 1 {
        chance(rng, 550)
    } else {
        chance(rng, 250)
    };
    // the airbag group: presence, deployment and its category
    let airbag = chance(rng, 600);
    let deploy = airbag * chance(rng, 550);
    let abcat = if deploy == 1 {
        chance(rng, 950)
    } else {
        airbag * chance(rng, 100)
    };
    let seatbelt = chance(rng, 700);
    let sex = chance(rng, 500);
    let occ_role = chance(rng, 800);
    let age = chance(rng, 400);
    [
        dvcat, airbag, seatbelt, frontal, sex, abcat, occ_role, deploy, age_of_occ, age,
    ]
}

fn score(x: &[u8; 10], weights: [i32; 10], bias: i32) -> bool {
    let s: i32 = x.iter().zip(weights).map(|(&v, w)| i32::from(v) * w).sum();
    s + bias >= 0
}

/// Three deterministic "classifiers" with overlapping but distinct
/// dependence on the features.
fn predictions(x: &[u8; 10]) -> [u8; 3] {
    let unbelted = 1 - x[2];
    let forest = (x[0] == 1 && (unbelted == 1 || x[8] == 1)) || (x[3] == 1 && x[1] == 1 && x[7] == 0);
    let svm = score(x, [5, -1, -3, 2, 0, 1, 0, -2, 3, 1], -5);
    let logistic = score(x, [4, 0, -4, 1, 1, 0, -1, 0, 2, 0], -4) && !(x[1] == 1 && x[7] == 1 && x[2] == 1);
    [u8::from(forest), u8::from(svm), u8::from(logistic)]
}

fn main() -> std::io::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "nass_synth.csv".into());
    let mut rng = generator(SEED);
    let mut w = std::io::BufWriter::new(std::fs::File::create(&out)?);
    writeln!(w, "{},y_rf,y_svm,y_lr", NAMES.join(","))?;
    for _ in 0..ROWS {
        let x = draw(&mut rng);
        let y = predictions(&x);
        let cells: Vec<String> = x.iter().chain(&y).map(u8::to_string).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()
}

//! Regenerates `tests/data/fixture_shares.jsonl`: about 200 themed articles,
//! several shares each, with reshares that grow with the divint index.
//!
//! Run: `cargo run -p reaction-metrics --example make_fixture [out-path]`

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reaction_metrics::emotion::score_article;
use reaction_metrics::ReactionCounts;
use serde_json::json;
use std::io::Write;

const THEMES: [&[&str]; 8] = [
    &[
        "vaccine",
        "antibody",
        "immune",
        "infection",
        "virus",
        "trial",
        "dose",
        "pandemic",
        "booster",
        "pathogen",
        "variant",
        "outbreak",
    ],
    &[
        "climate",
        "warming",
        "carbon",
        "glacier",
        "ocean",
        "emission",
        "drought",
        "temperature",
        "arctic",
        "methane",
        "coral",
        "flood",
    ],
    &[
        "galaxy",
        "telescope",
        "planet",
        "orbit",
        "asteroid",
        "comet",
        "nebula",
        "astronomer",
        "spacecraft",
        "moon",
        "cosmic",
        "supernova",
    ],
    &[
        "genome",
        "gene",
        "dna",
        "mutation",
        "crispr",
        "protein",
        "cell",
        "sequencing",
        "chromosome",
        "enzyme",
        "heredity",
        "embryo",
    ],
    &[
        "brain",
        "neuron",
        "memory",
        "sleep",
        "dementia",
        "cognition",
        "cortex",
        "dopamine",
        "anxiety",
        "depression",
        "synapse",
        "mood",
    ],
    &[
        "diet",
        "sugar",
        "obesity",
        "vitamin",
        "coffee",
        "calorie",
        "nutrition",
        "fasting",
        "meat",
        "breakfast",
        "alcohol",
        "fibre",
    ],
    &[
        "dinosaur",
        "fossil",
        "skeleton",
        "extinction",
        "jurassic",
        "bone",
        "excavation",
        "predator",
        "feather",
        "amber",
        "tooth",
        "reptile",
    ],
    &[
        "robot",
        "algorithm",
        "computer",
        "quantum",
        "software",
        "chip",
        "machine",
        "network",
        "battery",
        "sensor",
        "laser",
        "drone",
    ],
];
const FILLER: [&str; 6] = ["study", "research", "scientist", "new", "finding", "journal"];
const ARTICLES: usize = 200;

fn post_text(rng: &mut ChaCha8Rng, theme: &[&str]) -> String {
    let len = rng.random_range(10..16);
    let mut words: Vec<&str> = Vec::with_capacity(len + 2);
    for _ in 0..len {
        // Zipf-like: earlier theme words are more frequent.
        let rank = (rng.random::<f64>().powf(1.6) * theme.len() as f64) as usize;
        words.push(theme[rank.min(theme.len() - 1)]);
    }
    words.push(FILLER.choose(rng).unwrap());
    if rng.random_bool(0.3) {
        words.push("the");
    }
    let mut text = words.join(" ");
    if rng.random_bool(0.2) {
        text.push_str(" https://doi.org/10.1000/xyz #science");
    }
    text
}

fn split(total: u64, parts: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut out = vec![0u64; parts];
    for _ in 0..total {
        out[rng.random_range(0..parts)] += 1;
    }
    out
}

fn main() -> std::io::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/fixture_shares.jsonl").to_owned());
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut lines = Vec::new();

    for a in 0..ARTICLES {
        let theme_no = a % THEMES.len();
        let theme = THEMES[theme_no];
        let like = rng.random_range(3..150u64);
        let mut special = [0u64; 5];
        if a % 40 != 39 {
            // Each article leans towards a random subset of special reactions.
            let breadth = rng.random_range(1..=5);
            let total = rng.random_range(1..60u64);
            for _ in 0..total {
                special[rng.random_range(0..breadth)] += 1;
            }
            let shift = rng.random_range(0..5);
            special.rotate_right(shift);
        }
        let counts = ReactionCounts::new([like, special[0], special[1], special[2], special[3], special[4]], 0);
        let divint = score_article::<f64>(&counts).map(|s| s.divint_index).unwrap_or(0.0);
        let noise: f64 = rng.random_range(-0.6..0.6);
        let reshares = ((0.8 + 4.0 * divint + noise).exp() - 1.0).max(0.0).round() as u64;

        let shares = rng.random_range(1..=3usize);
        let clicks = counts.clicks();
        let per_reaction: Vec<Vec<u64>> = clicks.iter().map(|&c| split(c, shares, &mut rng)).collect();
        let per_reshare = split(reshares, shares, &mut rng);
        for s in 0..shares {
            let lang = if a == 17 && s == 0 {
                Some("de")
            } else if rng.random_bool(0.1) {
                None
            } else {
                Some("en")
            };
            let text = if lang == Some("de") {
                "Neue Studie zeigt erstaunliche Ergebnisse".to_owned()
            } else {
                post_text(&mut rng, theme)
            };
            lines.push(json!({
                "article_id": format!("A{a:03}"),
                "page_id_hash": format!("p{:04x}", rng.random::<u16>()),
                "lang": lang,
                "text": text,
                "title": if s == 0 { Some(format!("{} report {a}", theme[0])) } else { None },
                "abstract": null,
                "pub_date": format!("2019-{:02}-{:02}", 1 + a % 12, 1 + a % 28),
                "like": per_reaction[0][s],
                "love": per_reaction[1][s],
                "wow": per_reaction[2][s],
                "laughter": per_reaction[3][s],
                "sad": per_reaction[4][s],
                "anger": per_reaction[5][s],
                "reshares": per_reshare[s],
            }));
        }
    }

    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
    for line in lines {
        writeln!(file, "{line}")?;
    }
    file.flush()?;
    eprintln!("wrote {path}");
    Ok(())
}

//! Fractional parts {n·α} and how evenly they fill [0, 1].

use equistat::weyl::{discrepancy_fraction, min_precision_bits, weyl_prefix, weyl_term, IrrationalId};

fn main() -> equistat::Result<()> {
    for alpha in [IrrationalId::Pi, IrrationalId::Sqrt2, IrrationalId::GoldenRatio] {
        let first: Vec<String> = weyl_prefix(5, alpha, 128)?
            .iter()
            .map(|u| format!("{:.6}", u.get()))
            .collect();
        println!("{alpha:>5}: {}", first.join(" "));
    }

    let n = 1_000_000_000_000u64;
    println!(
        "{{n·pi}} at n = {n}: {} (needs >= {} bits)",
        weyl_term(n, IrrationalId::Pi, 128)?.get(),
        min_precision_bits(n)
    );
    if let Err(e) = weyl_term(n, IrrationalId::Pi, 64) {
        println!("with 64 bits: {e}");
    }

    let terms = weyl_prefix(100_000, IrrationalId::Pi, 128)?;
    for (c, d) in [(0.0, 0.1), (0.25, 0.5), (0.9, 1.0)] {
        let share = discrepancy_fraction(&terms, c, d)?;
        println!("share in [{c}, {d}]: {share:.5} (length {:.2})", d - c);
    }
    Ok(())
}

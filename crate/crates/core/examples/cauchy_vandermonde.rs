//! Cauchy and Vandermonde closed forms against elimination, over ℚ and 𝔽_p.

use legdet::exactla::{cauchy_closed_form, cauchy_matrix, det, vandermonde_det, vandermonde_matrix};
use legdet::{Fp, Rat};

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn main() -> legdet::Result<()> {
    let xs = [q(1, 2), q(-1, 4), q(2, 1), q(5, 7)];
    let ys = [q(3, 1), q(1, 5), q(-2, 9), q(6, 1)];
    println!("cauchy  closed {}  direct {}", cauchy_closed_form(&xs, &ys)?, det(&cauchy_matrix(&xs, &ys)?)?);
    println!("diag    closed {}  direct {}", cauchy_closed_form(&xs, &xs)?, det(&cauchy_matrix(&xs, &xs)?)?);

    let nodes: Vec<Fp> = [0, 1, 4, 9, 16].iter().map(|&t| Fp::new(t, 101)).collect();
    let v = vandermonde_det(&nodes)?;
    println!("vandermonde mod 101  closed {}  direct {}", v.value(), det(&vandermonde_matrix(&nodes))?.value());
    Ok(())
}

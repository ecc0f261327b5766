use super::{GbError, Ideal};

/// Minimal primes of a squarefree monomial ideal, each generated by
/// variables (minimal vertex covers of the generator hypergraph).
pub fn monomial_minimal_primes(i: &Ideal) -> Result<Vec<Ideal>, GbError> {
    let n = i.vars().len();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for g in i.gens() {
        if g.num_terms() != 1 {
            return Err(GbError::NotSquarefreeMonomial(g.to_string()));
        }
        let (m, _) = g.terms().next().unwrap();
        if m.exps().any(|e| e > 1) {
            return Err(GbError::NotSquarefreeMonomial(g.to_string()));
        }
        let e: Vec<usize> = (0..n).filter(|&k| m.exp(k) == 1).collect();
        if e.is_empty() {
            return Ok(Vec::new());
        }
        edges.push(e);
    }
    let mut covers: Vec<Vec<usize>> = Vec::new();
    let mut chosen = vec![false; n];
    split(&edges, &mut chosen, &mut covers);

    covers.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for c in covers {
        if !minimal.iter().any(|m| m.iter().all(|v| c.contains(v))) {
            minimal.push(c);
        }
    }
    minimal.sort();
    Ok(minimal
        .into_iter()
        .map(|c| Ideal::of_vars(i.vars(), &c))
        .collect())
}

/// Branches on the variables of the first uncovered generator.
fn split(edges: &[Vec<usize>], chosen: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    let Some(edge) = edges.iter().find(|e| !e.iter().any(|&v| chosen[v])) else {
        out.push((0..chosen.len()).filter(|&v| chosen[v]).collect());
        return;
    };
    for &v in edge {
        chosen[v] = true;
        split(edges, chosen, out);
        chosen[v] = false;
    }
}

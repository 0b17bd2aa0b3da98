use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{SpecialForm, Var};
use crate::structure::{rank, Elem, Structure};

use super::compiled::{Assignment, Compiled};

/// Witness functions `α_1, …, α_m` for a special-form formula: `α_i` maps
/// the values `(c_1, …, c_i)` of the first `i` universal variables to a
/// value of the `i`-th existential variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTable {
    universe: usize,
    /// `tables[i]` is indexed by the lexicographic rank of `(c_1, …, c_{i+1})`.
    tables: Vec<Vec<Elem>>,
}

impl WitnessTable {
    pub fn m(&self) -> usize {
        self.tables.len()
    }

    /// `α_i(c_1, …, c_i)` with `i = prefix.len()`, counting from one.
    pub fn value(&self, prefix: &[Elem]) -> Elem {
        self.tables[prefix.len() - 1][rank(prefix, self.universe)]
    }

    /// Existential values chosen along the universal values `c`.
    pub fn play(&self, c: &[Elem]) -> Vec<Elem> {
        (1..=c.len()).map(|i| self.value(&c[..i])).collect()
    }

    /// Checks the table against every `c ∈ A^m`.
    pub fn verify(&self, s: &Structure, sf: &SpecialForm, a: &Assignment) -> Result<bool> {
        let (matrix, mut env) = prepare(s, sf, a)?;
        let n = sf.free.len();
        let m = sf.m();
        let k = s.size();
        let mut c = vec![0; m];
        for r in 0..k.pow(m as u32) {
            let mut x = r;
            for i in (0..m).rev() {
                c[i] = x % k;
                x /= k;
            }
            let z = self.play(&c);
            for i in 0..m {
                env[n + 2 * i] = c[i];
                env[n + 2 * i + 1] = z[i];
            }
            if !matrix.eval_slots(s, &mut env) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One line per argument tuple: `alpha_i(c1,...,ci) = z`, 1-based.
impl fmt::Display for WitnessTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, table) in self.tables.iter().enumerate() {
            let mut c = vec![0; i + 1];
            for (r, z) in table.iter().enumerate() {
                crate::structure::unrank_into(r, self.universe, &mut c);
                let args: Vec<String> = c.iter().map(|e| (e + 1).to_string()).collect();
                writeln!(f, "alpha_{}({}) = {}", i + 1, args.join(","), z + 1)?;
            }
        }
        Ok(())
    }
}

/// Compiles the matrix with slots `free…, y1, z1, y2, z2, …` and fills the
/// free part of the environment.
fn prepare(s: &Structure, sf: &SpecialForm, a: &Assignment) -> Result<(Compiled, Vec<Elem>)> {
    let mut order: Vec<Var> = sf.free.clone();
    for (y, z) in &sf.blocks {
        order.push(y.clone());
        order.push(z.clone());
    }
    let matrix = Compiled::new(&sf.matrix, s.signature(), &order)?;
    let mut env = vec![0; matrix.slot_count().max(1)];
    for (i, v) in sf.free.iter().enumerate() {
        let e = a.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
        if e >= s.size() {
            return Err(Error::Precondition(format!(
                "value of `{v}` outside the universe"
            )));
        }
        env[i] = e;
    }
    Ok((matrix, env))
}

/// Witness functions for `sf` under `a`, choosing the least working value
/// at each step, or `None` if the formula is false.
pub fn find_witnesses(
    s: &Structure,
    sf: &SpecialForm,
    a: &Assignment,
) -> Result<Option<WitnessTable>> {
    let (matrix, mut env) = prepare(s, sf, a)?;
    let m = sf.m();
    let k = s.size();
    let mut tables: Vec<Vec<Elem>> = (1..=m).map(|i| vec![0; k.pow(i as u32)]).collect();
    let ctx = Ctx {
        s,
        matrix: &matrix,
        base: sf.free.len(),
        m,
        k,
    };
    let mut c = Vec::with_capacity(m);
    if ctx.solve(0, &mut c, &mut env, &mut tables) {
        Ok(Some(WitnessTable {
            universe: k,
            tables,
        }))
    } else {
        Ok(None)
    }
}

struct Ctx<'a> {
    s: &'a Structure,
    matrix: &'a Compiled,
    base: usize,
    m: usize,
    k: usize,
}

impl Ctx<'_> {
    fn solve(
        &self,
        i: usize,
        c: &mut Vec<Elem>,
        env: &mut [Elem],
        tables: &mut [Vec<Elem>],
    ) -> bool {
        if i == self.m {
            return self.matrix.eval_slots(self.s, env);
        }
        for ci in 0..self.k {
            c.push(ci);
            env[self.base + 2 * i] = ci;
            let mut found = None;
            for z in 0..self.k {
                env[self.base + 2 * i + 1] = z;
                if self.solve(i + 1, c, env, tables) {
                    found = Some(z);
                    break;
                }
            }
            let Some(z) = found else {
                c.pop();
                return false;
            };
            // Re-establish the chosen value; deeper levels overwrote slots.
            env[self.base + 2 * i + 1] = z;
            tables[i][rank(c, self.k)] = z;
            c.pop();
        }
        true
    }
}

//! Report types printed by each subcommand.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::format::MatrixJson;

pub trait Report: Serialize {
    fn text(&self) -> String;

    /// False when a property that should hold was found to fail.
    fn passed(&self) -> bool {
        true
    }
}

fn matrix_text(m: &MatrixJson) -> String {
    let width = m.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            format!("  [{}]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub g1: MatrixJson,
    pub g2: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalOut {
    pub ring: String,
    pub word: String,
    pub value: MatrixJson,
    pub in_w: bool,
    pub in_t: bool,
}

impl Report for EvalOut {
    fn text(&self) -> String {
        format!(
            "w = {} over {}\nvalue:\n{}\nin W (value = I): {}\nin T (value unipotent): {}\n",
            self.word,
            self.ring,
            matrix_text(&self.value),
            self.in_w,
            self.in_t
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtendOut {
    pub ring: String,
    pub word: String,
    pub extension: MatrixJson,
    pub delta: String,
    /// The word map itself; absent when some argument is singular.
    pub group: Option<MatrixJson>,
    /// `extension = delta * group`, when the group value exists.
    pub restriction_holds: Option<bool>,
    /// Every argument has determinant 1.
    pub on_special: bool,
}

impl Report for ExtendOut {
    fn text(&self) -> String {
        let mut s = format!("w = {} over {}\nadjugate extension:\n{}\n", self.word, self.ring, matrix_text(&self.extension));
        let _ = writeln!(s, "delta = {}", self.delta);
        match (&self.group, self.restriction_holds) {
            (Some(g), Some(h)) => {
                let _ = writeln!(s, "word map:\n{}\nextension = delta * word map: {h}", matrix_text(g));
            }
            _ => s.push_str("word map undefined (singular argument)\n"),
        }
        s
    }

    fn passed(&self) -> bool {
        self.restriction_holds != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiProbeOut {
    pub ring: String,
    pub word: String,
    pub coefficient: usize,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub values: Vec<String>,
    pub truncated: bool,
    pub verdict: String,
}

impl Report for ChiProbeOut {
    fn text(&self) -> String {
        let more = if self.truncated { " (truncated)" } else { "" };
        format!(
            "chi_{} of w = {} on SL_{} over {}, {} samples, seed {}\n{} distinct values{more}: {}\nverdict: {}\n",
            self.coefficient,
            self.word,
            self.n,
            self.ring,
            self.samples,
            self.seed,
            self.values.len(),
            self.values.join(", "),
            self.verdict
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DominanceOut {
    pub ring: String,
    pub word: String,
    pub n: usize,
    pub seed: u64,
    pub ranks: Vec<usize>,
    pub generic_rank: usize,
    pub max_rank: usize,
    pub dominant: bool,
}

impl Report for DominanceOut {
    fn text(&self) -> String {
        let ranks: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
        format!(
            "differential rank of w = {} on SL_{} over {}, seed {}\nranks: {}\ngeneric rank {} of {}; dominant: {}\n",
            self.word,
            self.n,
            self.ring,
            self.seed,
            ranks.join(" "),
            self.generic_rank,
            self.max_rank,
            self.dominant
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreimageOut {
    pub ring: String,
    pub target: String,
    pub lambda: String,
    pub beta: String,
    pub t: MatrixJson,
    pub g: MatrixJson,
    pub trace: String,
    pub verified: bool,
}

impl Report for PreimageOut {
    fn text(&self) -> String {
        format!(
            "tr [t, g] = {} over {}\nt:\n{}\ng:\n{}\ncomputed trace {}; verified: {}\n",
            self.target,
            self.ring,
            matrix_text(&self.t),
            matrix_text(&self.g),
            self.trace,
            self.verified
        )
    }

    fn passed(&self) -> bool {
        self.verified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberOut {
    pub ring: String,
    pub word: String,
    pub value: MatrixJson,
    pub in_w: bool,
    pub in_t: bool,
    pub w_jacobian_rank: usize,
    pub t_jacobian_rank: usize,
    /// `3m - rank`: tangent dimension of the fiber at the point.
    pub w_tangent_dim: usize,
    pub t_tangent_dim: usize,
}

impl Report for FiberOut {
    fn text(&self) -> String {
        format!(
            "w = {} over {}\nvalue:\n{}\nin W: {}  in T: {}\nW equations: Jacobian rank {}, tangent dim {}\nT equation: Jacobian rank {}, tangent dim {}\n",
            self.word,
            self.ring,
            matrix_text(&self.value),
            self.in_w,
            self.in_t,
            self.w_jacobian_rank,
            self.w_tangent_dim,
            self.t_jacobian_rank,
            self.t_tangent_dim
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub scalars: Vec<String>,
    pub groups: Vec<MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimcertOut {
    pub component: String,
    pub ring: String,
    pub word: String,
    pub seed: u64,
    pub claimed: usize,
    pub lower: usize,
    pub upper: usize,
    pub confirmed: bool,
    pub point: PairJson,
    pub params: ParamsJson,
}

impl Report for DimcertOut {
    fn text(&self) -> String {
        format!(
            "{} for w = {} over {}, seed {}\nlower {} <= dim <= upper {}; claimed {}; confirmed: {}\ng1:\n{}\ng2:\n{}\n",
            self.component,
            self.word,
            self.ring,
            self.seed,
            self.lower,
            self.upper,
            self.claimed,
            self.confirmed,
            matrix_text(&self.point.g1),
            matrix_text(&self.point.g2)
        )
    }

    fn passed(&self) -> bool {
        self.confirmed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SepWitnessOut {
    pub example: String,
    pub word: String,
    pub ring: String,
    pub found: bool,
    pub point: Option<PairJson>,
    pub value: Option<MatrixJson>,
    pub trace: Option<String>,
    pub verified: bool,
}

impl Report for SepWitnessOut {
    fn text(&self) -> String {
        match (&self.point, &self.value) {
            (Some(p), Some(v)) => format!(
                "{} (w = {}) over {}\ng1:\n{}\ng2:\n{}\nw(g1, g2):\n{}\ntrace {}; nontrivial unipotent: {}\n",
                self.example,
                self.word,
                self.ring,
                matrix_text(&p.g1),
                matrix_text(&p.g2),
                matrix_text(v),
                self.trace.as_deref().unwrap_or("?"),
                self.verified
            ),
            _ => format!("{} (w = {}) over {}: no witness found\n", self.example, self.word, self.ring),
        }
    }

    fn passed(&self) -> bool {
        self.verified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelscanOut {
    pub ring: String,
    pub max_len: usize,
    pub trivial: bool,
    pub relations: Vec<String>,
    pub group_order: Option<usize>,
    pub order_cap: usize,
}

impl Report for RelscanOut {
    fn text(&self) -> String {
        if self.trivial {
            return format!("both matrices are I over {}; every word is a relation\n", self.ring);
        }
        let mut s = format!("{} relations of length <= {} over {}\n", self.relations.len(), self.max_len, self.ring);
        for r in &self.relations {
            let _ = writeln!(s, "  {r}");
        }
        match self.group_order {
            Some(k) => {
                let _ = writeln!(s, "generated group has order {k}");
            }
            None => {
                let _ = writeln!(s, "generated group has more than {} elements", self.order_cap);
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma78Out {
    pub ring: String,
    pub lambda: String,
    pub exhaustive: bool,
    pub checked: usize,
    /// Parameters `u` where the value is not lower unitriangular, or where
    /// triviality does not match `u = 0`.
    pub failures: Vec<String>,
    pub holds: bool,
}

impl Report for Lemma78Out {
    fn text(&self) -> String {
        let how = if self.exhaustive { "all" } else { "sampled" };
        let mut s = format!(
            "w(diag(l, 1/l), w0 [[1,u],[0,1]]) over {}, l = {}: {} {} values of u checked\n",
            self.ring, self.lambda, how, self.checked
        );
        if !self.failures.is_empty() {
            let _ = writeln!(s, "failures at u = {}", self.failures.join(", "));
        }
        let _ = writeln!(s, "lower unitriangular, trivial iff u = 0: {}", self.holds);
        s
    }

    fn passed(&self) -> bool {
        self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma101Out {
    pub ring: String,
    pub z: MatrixJson,
    pub intermediate: MatrixJson,
    pub value: MatrixJson,
    pub trace: String,
    pub z_matches: bool,
    pub intermediate_matches: bool,
    pub value_is_square: bool,
    pub trace_is_34: bool,
    pub trace_not_two: bool,
    pub holds: bool,
}

impl Report for Lemma101Out {
    fn text(&self) -> String {
        format!(
            "over {}\n[u, g]:\n{}\nz u z u^-1:\n{}\nw(u, g):\n{}\ntrace {} (34: {}, != 2: {}); all checks: {}\n",
            self.ring,
            matrix_text(&self.z),
            matrix_text(&self.intermediate),
            matrix_text(&self.value),
            self.trace,
            self.trace_is_34,
            self.trace_not_two,
            self.holds
        )
    }

    fn passed(&self) -> bool {
        self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsCheckOut {
    #[serde(rename = "type")]
    pub root_type: String,
    pub rank: usize,
    pub roots: usize,
    pub positive_roots: usize,
    pub holds: bool,
    pub expected: bool,
    pub agrees: bool,
    pub witness: Option<Vec<String>>,
}

impl Report for RootsCheckOut {
    fn text(&self) -> String {
        let mut s = format!(
            "{}{}: {} roots, {} positive\nproperty (*): {} (expected {})\n",
            self.root_type, self.rank, self.roots, self.positive_roots, self.holds, self.expected
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {}", w.join(", "));
        }
        s
    }

    fn passed(&self) -> bool {
        self.agrees
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsRow {
    pub root_system: String,
    pub holds: bool,
    pub expected: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsTableOut {
    pub max_rank: usize,
    pub rows: Vec<RootsRow>,
    pub failing: Vec<String>,
    pub all_agree: bool,
}

impl Report for RootsTableOut {
    fn text(&self) -> String {
        let mut s = String::from("type   (*)    expected\n");
        for r in &self.rows {
            let mark = if r.agrees { "" } else { "  MISMATCH" };
            let _ = writeln!(s, "{:<6} {:<6} {:<6}{mark}", r.root_system, r.holds, r.expected);
        }
        let _ = writeln!(s, "fails for: {}", self.failing.join(", "));
        let _ = writeln!(s, "all verdicts as expected: {}", self.all_agree);
        s
    }

    fn passed(&self) -> bool {
        self.all_agree
    }
}

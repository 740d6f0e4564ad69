//! The ambient Galois setup: a finite group Γ = Gal(K/F) with named fixed
//! fields for every subgroup class, plus the two independence hypotheses the
//! equality verdicts are conditional on.
//!
//! The default context is the biquadratic one: Γ ≅ C2×C2 = ⟨s1, s2⟩ acting on
//! four letters with s1 = (01), s2 = (23), subgroup classes labelled
//! K, E1, E2, E12, F in registry order.

use thiserror::Error;

use crate::burnside::{BurnsideElement, BurnsideTables};
use crate::perm::{GSet, GroupError, PermGroup, SubgroupId};

#[derive(Debug, Error)]
pub enum ContextError {
    #[error("context JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Hypothesis A1: a polynomial in the Lefschetz class with étale-algebra
/// coefficients vanishes in the ambient ring iff all its coefficients vanish.
pub const AXIOM_COEFFICIENT_INDEPENDENCE: &str =
    "A1 coefficient-independence: over a finitely generated extension of Q, the coefficients of a vanishing polynomial in the Lefschetz class must themselves vanish";

/// Hypothesis A2: classes of distinct field extensions are linearly
/// independent, so the Burnside model embeds faithfully.
pub const AXIOM_FIELD_INDEPENDENCE: &str =
    "A2 field-independence: motivic classes of distinct field extensions of the base are linearly independent";

#[derive(Debug)]
pub struct GaloisContext {
    group: PermGroup,
    subgroup_groups: Vec<PermGroup>,
    tables: BurnsideTables,
    labels: Vec<String>,
    /// A1 above
    pub coefficient_independence: bool,
    /// A2 above
    pub field_independence: bool,
}

impl GaloisContext {
    pub fn new(group: PermGroup, labels: Vec<String>) -> Result<Self, ContextError> {
        if labels.len() != group.num_classes() {
            return Err(ContextError::Json(format!(
                "expected {} field labels (one per subgroup class), got {}",
                group.num_classes(),
                labels.len()
            )));
        }
        let subgroup_groups = (0..group.num_classes())
            .map(|i| group.subgroup_group(SubgroupId(i)))
            .collect();
        let tables = BurnsideTables::new(&group);
        Ok(GaloisContext {
            group,
            subgroup_groups,
            tables,
            labels,
            coefficient_independence: true,
            field_independence: true,
        })
    }

    /// Γ ≅ C2×C2 with the standard biquadratic field labels.
    pub fn biquadratic() -> Self {
        let group = PermGroup::new(4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]).unwrap();
        GaloisContext::new(
            group,
            vec![
                "K".into(),
                "E1".into(),
                "E2".into(),
                "E12".into(),
                "F".into(),
            ],
        )
        .unwrap()
    }

    /// Γ ≅ C2 for a single quadratic extension E/F.
    pub fn quadratic() -> Self {
        let group = PermGroup::new(2, vec![vec![1, 0]]).unwrap();
        GaloisContext::new(group, vec!["E".into(), "F".into()]).unwrap()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn tables(&self) -> &BurnsideTables {
        &self.tables
    }

    pub fn subgroup_group(&self, id: SubgroupId) -> &PermGroup {
        &self.subgroup_groups[id.0]
    }

    pub fn label(&self, id: SubgroupId) -> &str {
        &self.labels[id.0]
    }

    pub fn subgroup_by_label(&self, label: &str) -> Option<SubgroupId> {
        self.labels.iter().position(|l| l == label).map(SubgroupId)
    }

    pub fn fingerprint(&self) -> u64 {
        self.group.fingerprint()
    }

    /// Both independence hypotheses hold, so model verdicts transfer to the
    /// ambient ring of stacks.
    pub fn axioms_sound(&self) -> bool {
        self.coefficient_independence && self.field_independence
    }

    pub fn axiom_notes(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.coefficient_independence {
            v.push(AXIOM_COEFFICIENT_INDEPENDENCE.to_string());
        }
        if self.field_independence {
            v.push(AXIOM_FIELD_INDEPENDENCE.to_string());
        }
        v
    }

    /// Element id of a generator word like "s1" or "s1*s2" ("e" = identity).
    pub fn element_by_word(&self, word: &str) -> Result<usize, ContextError> {
        let word = word.trim();
        if word == "e" || word.is_empty() {
            return Ok(0);
        }
        let mut elem = 0usize;
        for part in word.split('*') {
            let part = part.trim();
            let gi = part
                .strip_prefix('s')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= self.group.num_generators())
                .ok_or_else(|| ContextError::Json(format!("unknown generator name {part:?}")))?;
            let gen_elem = self
                .group
                .element_id(self.group.generator(gi - 1))
                .expect("generator is an element");
            elem = self.group.multiply(elem, gen_elem);
        }
        Ok(elem)
    }

    /// Subgroup class named by generator words, e.g. ["s1"] or ["s1*s2"].
    pub fn subgroup_by_words(&self, words: &[String]) -> Result<SubgroupId, ContextError> {
        let elems: Result<Vec<usize>, _> = words.iter().map(|w| self.element_by_word(w)).collect();
        Ok(self.group.class_of_generated(&elems?)?)
    }

    /// Render a Burnside element canonically: the multiple of the unit class
    /// prints as a bare integer first, then the other labels in registry
    /// order with explicit signs (e.g. "2 + \[K\] - \[E1\] - \[E2\] - \[E12\]").
    pub fn render_element(&self, e: &BurnsideElement) -> String {
        let full = self.group.full_class();
        let mut parts: Vec<(i64, Option<&str>)> = Vec::new();
        let unit = e.coeff(full);
        if unit != 0 {
            parts.push((unit, None));
        }
        for (id, n) in e.terms() {
            if id != full {
                parts.push((n, Some(self.label(id))));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (n, label)) in parts.iter().enumerate() {
            let mag = n.abs();
            if i == 0 {
                if *n < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *n < 0 { " - " } else { " + " });
            }
            match label {
                None => out.push_str(&mag.to_string()),
                Some(l) => {
                    if mag != 1 {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(&format!("[{l}]"));
                }
            }
        }
        out
    }

    /// Parse expressions like "2+\[K\]-\[E1\]-\[E2\]-\[E12\]" or "3*\[K\] - 1".
    pub fn parse_element(&self, input: &str) -> Result<BurnsideElement, ContextError> {
        let mut e = BurnsideElement::zero(&self.group);
        let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        let mut first = true;
        while i < s.len() {
            let sign = match s[i] {
                '+' => {
                    i += 1;
                    1
                }
                '-' => {
                    i += 1;
                    -1
                }
                _ if first => 1,
                c => {
                    return Err(ContextError::Json(format!(
                        "expected '+' or '-' before {c:?} in element expression"
                    )))
                }
            };
            first = false;
            let mut mag: Option<i64> = None;
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            if i > start {
                let num: String = s[start..i].iter().collect();
                mag = Some(num.parse().map_err(|_| {
                    ContextError::Json(format!("bad integer {num:?} in element expression"))
                })?);
                if i < s.len() && s[i] == '*' {
                    i += 1;
                }
            }
            if i < s.len() && s[i] == '[' {
                let close = s[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| ContextError::Json("unclosed '[' in element".into()))?;
                let label: String = s[i + 1..i + close].iter().collect();
                i += close + 1;
                let id = self
                    .subgroup_by_label(&label)
                    .ok_or_else(|| ContextError::Json(format!("unknown field label [{label}]")))?;
                e = e.add(&BurnsideElement::basis(&self.group, id).scale(sign * mag.unwrap_or(1)));
            } else {
                let mag = mag.ok_or_else(|| {
                    ContextError::Json("expected integer or [label] in element".into())
                })?;
                e = e.add(&BurnsideElement::constant(&self.group, sign * mag));
            }
        }
        Ok(e)
    }

    /// Parse a G-set description: "regular", "point", "trivial:\<n\>",
    /// "coset:\<LABEL\>", or '+'-joined unions of those.
    pub fn parse_gset(&self, input: &str) -> Result<GSet, ContextError> {
        let mut acc: Option<GSet> = None;
        for piece in input.split('+') {
            let piece = piece.trim();
            let gs = if piece == "regular" {
                GSet::regular(&self.group)
            } else if piece == "point" {
                GSet::point(&self.group)
            } else if let Some(n) = piece.strip_prefix("trivial:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| ContextError::Json(format!("bad size in {piece:?}")))?;
                GSet::trivial(&self.group, n)
            } else if let Some(label) = piece.strip_prefix("coset:") {
                let id = self
                    .subgroup_by_label(label)
                    .ok_or_else(|| ContextError::Json(format!("unknown field label {label:?}")))?;
                self.group.coset_gset(id)
            } else {
                return Err(ContextError::Json(format!("unknown G-set spec {piece:?}")));
            };
            acc = Some(match acc {
                None => gs,
                Some(prev) => prev.disjoint_union(&gs),
            });
        }
        acc.ok_or_else(|| ContextError::Json("empty G-set spec".into()))
    }

    /// Load a context from its JSON description:
    ///
    /// ```json
    /// {"group":{"degree":4,"generators":[[1,0,2,3],[0,1,3,2]]},
    ///  "fields":[{"subgroup":[],"name":"K"},{"subgroup":["s1"],"name":"E1"}],
    ///  "axioms":{"coefficient_independence":true,"field_independence":true}}
    /// ```
    pub fn from_json(input: &str) -> Result<Self, ContextError> {
        let v: serde_json::Value =
            serde_json::from_str(input).map_err(|e| ContextError::Json(e.to_string()))?;
        let group_v = v
            .get("group")
            .ok_or_else(|| ContextError::Json("missing \"group\"".into()))?;
        let group = parse_group(group_v)?;
        let n_classes = group.num_classes();

        let mut labels: Vec<Option<String>> = vec![None; n_classes];
        // a throwaway context to reuse the word parser for subgroup naming
        let namer = GaloisContext::new(
            group.clone(),
            (0..n_classes).map(|i| format!("#{i}")).collect(),
        )?;
        if let Some(fields) = v.get("fields") {
            let arr = fields
                .as_array()
                .ok_or_else(|| ContextError::Json("\"fields\" must be an array".into()))?;
            for f in arr {
                let name = f
                    .get("name")
                    .and_then(|n| n.as_str())
                    .ok_or_else(|| ContextError::Json("field entry missing \"name\"".into()))?;
                let words: Vec<String> = f
                    .get("subgroup")
                    .and_then(|s| s.as_array())
                    .ok_or_else(|| {
                        ContextError::Json("field entry missing \"subgroup\" array".into())
                    })?
                    .iter()
                    .map(|w| {
                        w.as_str().map(String::from).ok_or_else(|| {
                            ContextError::Json("subgroup words must be strings".into())
                        })
                    })
                    .collect::<Result<_, _>>()?;
                let id = namer.subgroup_by_words(&words)?;
                labels[id.0] = Some(name.to_string());
            }
        }
        let labels: Result<Vec<String>, ContextError> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                l.ok_or_else(|| {
                    ContextError::Json(format!("no field label given for subgroup class {i}"))
                })
            })
            .collect();
        let mut ctx = GaloisContext::new(group, labels?)?;
        if let Some(ax) = v.get("axioms") {
            if let Some(b) = ax.get("coefficient_independence").and_then(|b| b.as_bool()) {
                ctx.coefficient_independence = b;
            }
            if let Some(b) = ax.get("field_independence").and_then(|b| b.as_bool()) {
                ctx.field_independence = b;
            }
        }
        Ok(ctx)
    }

    /// Parse a G-set JSON fragment:
    /// `{"transitive":[{"stabilizer":["s1"]},{"stabilizer":["s2"]}]}` or
    /// `{"action":[[...],[...]]}`.
    pub fn gset_from_json(&self, v: &serde_json::Value) -> Result<GSet, ContextError> {
        if let Some(pieces) = v.get("transitive") {
            let arr = pieces
                .as_array()
                .ok_or_else(|| ContextError::Json("\"transitive\" must be an array".into()))?;
            let mut acc: Option<GSet> = None;
            for p in arr {
                let words: Vec<String> = p
                    .get("stabilizer")
                    .and_then(|s| s.as_array())
                    .ok_or_else(|| {
                        ContextError::Json("transitive piece missing \"stabilizer\"".into())
                    })?
                    .iter()
                    .map(|w| {
                        w.as_str().map(String::from).ok_or_else(|| {
                            ContextError::Json("stabilizer words must be strings".into())
                        })
                    })
                    .collect::<Result<_, _>>()?;
                let id = self.subgroup_by_words(&words)?;
                let gs = self.group.coset_gset(id);
                acc = Some(match acc {
                    None => gs,
                    Some(prev) => prev.disjoint_union(&gs),
                });
            }
            acc.ok_or_else(|| ContextError::Json("empty transitive list".into()))
        } else if let Some(action) = v.get("action") {
            let tables: Vec<Vec<usize>> = serde_json::from_value(action.clone())
                .map_err(|e| ContextError::Json(e.to_string()))?;
            Ok(GSet::new(&self.group, tables)?)
        } else {
            Err(ContextError::Json(
                "G-set needs \"transitive\" or \"action\"".into(),
            ))
        }
    }

    /// Parse a lattice from JSON: {"rank":3,"action":{"s1":[[...]],"s2":[[...]]}}
    /// with row-major integer matrices keyed by generator names.
    pub fn lattice_from_json(
        &self,
        name: &str,
        v: &serde_json::Value,
    ) -> Result<crate::lattice::GaloisLattice, ContextError> {
        let rank = v
            .get("rank")
            .and_then(|r| r.as_u64())
            .ok_or_else(|| ContextError::Json("lattice missing \"rank\"".into()))?
            as usize;
        let action_v = v
            .get("action")
            .and_then(|a| a.as_object())
            .ok_or_else(|| ContextError::Json("lattice missing \"action\" object".into()))?;
        let mut action = Vec::new();
        for gi in 1..=self.group.num_generators() {
            let key = format!("s{gi}");
            let rows: Vec<Vec<i64>> = serde_json::from_value(
                action_v
                    .get(&key)
                    .cloned()
                    .ok_or_else(|| ContextError::Json(format!("action missing {key:?}")))?,
            )
            .map_err(|e| ContextError::Json(e.to_string()))?;
            if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                return Err(ContextError::Json(format!(
                    "matrix for {key} must be {rank}x{rank}"
                )));
            }
            action.push(crate::intmat::IntMat::from_rows(rows));
        }
        crate::lattice::GaloisLattice::new(&self.group, name, action)
            .map_err(|e| ContextError::Json(e.to_string()))
    }
}

fn parse_group(v: &serde_json::Value) -> Result<PermGroup, ContextError> {
    let degree =
        v.get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| ContextError::Json("group missing \"degree\"".into()))? as usize;
    let gens: Vec<Vec<usize>> = serde_json::from_value(
        v.get("generators")
            .cloned()
            .ok_or_else(|| ContextError::Json("group missing \"generators\"".into()))?,
    )
    .map_err(|e| ContextError::Json(e.to_string()))?;
    Ok(PermGroup::new(degree, gens)?)
}

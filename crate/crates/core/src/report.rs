use serde::Serialize;

/// Outcome of one named check, with an optional witness on failure and an
/// optional computed value worth reporting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, witness: None, value: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), pass: false, witness: Some(witness.into()), value: None }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        Check { name: name.into(), pass: witness.is_none(), witness, value: None }
    }

    pub fn with_value(mut self, value: impl Into<String>) -> Self {
        self.value = Some(value.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Appends `other` with every check name prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        self.checks.extend(
            other.checks.into_iter().map(|c| {
                let name = format!("{prefix}.{}", c.name);
                c.renamed(name)
            }),
        );
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl From<Check> for Report {
    fn from(c: Check) -> Self {
        Report { checks: vec![c] }
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        Report { checks: iter.into_iter().collect() }
    }
}

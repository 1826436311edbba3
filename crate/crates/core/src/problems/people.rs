//! The taxonomic `people` benchmark: 23 base facts, 39 defaults, and six
//! variants that each add one or two atoms to the facts. None of the
//! defaults is self-blocking, so all 39 are chromosome-encoded.

use crate::formula::Formula;
use crate::theory::{parse_theory, DefaultTheory};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

const PEOPLE_BASE: &str = "\
W:
  ~boy | ~girl.
  ~boy | kid.
  ~girl | kid.
  ~human | male | female.
  ~kid | human.
  ~student | human.
  ~adult | human.
  ~adult | ~kid.
  ~adult | ~male | man.
  ~adult | ~female | woman.
  ~academic | adult.
  ~academic | diploma.
  ~doctor | academic.
  ~priest | academic.
  ~prof | academic.
  ~bishop | priest.
  ~cardinal | bishop.
  ~redsuit | suit.
  ~whitesuit | suit.
  ~blacksuit | suit.
  ~redsuit | ~whitesuit.
  ~whitesuit | ~blacksuit.
  ~redsuit | ~blacksuit.
D:
  human : name / name.
  kid : toys / toys.
  student : adult / adult.
  student : ~employed / ~employed.
  student : ~married / ~married.
  student : sports / sports.
  adult : ~student / employed.
  adult : ~student, ~priest / married.
  adult : car / car.
  adult : ~academic / ~toys.
  man : ~prof / beer.
  man : ~vegetarian / steak.
  man : coffee / coffee.
  man | woman : wine / wine.
  woman : tea / tea.
  academic : ~prof / ~employed.
  academic : ~priest / toys.
  academic : books / books.
  academic : glasses / glasses.
  academic : ~priest / late.
  doctor : medicine / medicine.
  doctor : whitesuit / whitesuit.
  prof : employed / employed.
  prof : grey / grey.
  prof : tie / tie.
  prof : water / water.
  prof : conservative / conservative.
  priest : male / male.
  priest : conservative / conservative.
  priest : ~cardinal / blacksuit.
  cardinal : redsuit / redsuit.
  car : mobile / mobile.
  tie : suit / suit.
  wine & steak & coffee : ~sports / heartdisease.
  sports : man / football | rugby | tennis.
  sports : woman / swim | jogging | tennis.
  toys & (football | rugby) : ball / ball.
  toys : boy / weapon.
  toys : girl / doll.
";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PeopleVariant {
    Boy,
    Girl,
    Man,
    Woman,
    ManStudent,
    WomanStudent,
}

impl PeopleVariant {
    pub const ALL: [PeopleVariant; 6] = [
        PeopleVariant::Boy,
        PeopleVariant::Girl,
        PeopleVariant::Man,
        PeopleVariant::Woman,
        PeopleVariant::ManStudent,
        PeopleVariant::WomanStudent,
    ];

    /// Atoms the variant adds to the facts.
    pub fn extra_facts(&self) -> &'static [&'static str] {
        match self {
            PeopleVariant::Boy => &["boy"],
            PeopleVariant::Girl => &["girl"],
            PeopleVariant::Man => &["man"],
            PeopleVariant::Woman => &["woman"],
            PeopleVariant::ManStudent => &["man", "student"],
            PeopleVariant::WomanStudent => &["woman", "student"],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PeopleVariant::Boy => "boy",
            PeopleVariant::Girl => "girl",
            PeopleVariant::Man => "man",
            PeopleVariant::Woman => "woman",
            PeopleVariant::ManStudent => "man-student",
            PeopleVariant::WomanStudent => "woman-student",
        }
    }
}

impl fmt::Display for PeopleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown people variant {0:?}; expected one of boy, girl, man, woman, man-student, woman-student")]
pub struct UnknownVariant(pub String);

impl FromStr for PeopleVariant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        PeopleVariant::ALL
            .into_iter()
            .find(|v| v.name() == norm)
            .ok_or_else(|| UnknownVariant(s.to_string()))
    }
}

pub fn generate_people(variant: PeopleVariant) -> DefaultTheory {
    let mut theory = parse_theory(PEOPLE_BASE).expect("embedded theory parses");
    for atom in variant.extra_facts() {
        theory.facts.push(Formula::atom(atom));
    }
    theory
}

//! Name-keyed factories for interchangeable strategies (transforms, samplers).

use std::collections::BTreeMap;

use crate::error::{Error, Result};

type Factory<P, T> = Box<dyn Fn(&P) -> Result<Box<T>> + Send + Sync>;

struct Entry<P, T: ?Sized> {
    description: &'static str,
    factory: Factory<P, T>,
}

/// Maps a strategy name to a constructor taking parameters `P`.
pub struct Registry<P, T: ?Sized> {
    what: &'static str,
    entries: BTreeMap<String, Entry<P, T>>,
}

impl<P, T: ?Sized> Registry<P, T> {
    /// `what` names the strategy family in error messages ("transform", "sampler").
    pub fn new(what: &'static str) -> Self {
        Registry {
            what,
            entries: BTreeMap::new(),
        }
    }

    /// Registers `factory` under `name`, replacing any previous entry.
    pub fn register<F>(&mut self, name: &str, description: &'static str, factory: F)
    where
        F: Fn(&P) -> Result<Box<T>> + Send + Sync + 'static,
    {
        self.entries.insert(
            name.to_string(),
            Entry {
                description,
                factory: Box::new(factory),
            },
        );
    }

    pub fn create(&self, name: &str, params: &P) -> Result<Box<T>> {
        let entry = self.entries.get(name).ok_or_else(|| Error::Unknown {
            what: self.what,
            name: name.to_string(),
        })?;
        (entry.factory)(params)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    /// Registered names in sorted order.
    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    pub fn describe(&self) -> Vec<(&str, &'static str)> {
        self.entries
            .iter()
            .map(|(k, e)| (k.as_str(), e.description))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter {
        fn greet(&self) -> String;
    }
    struct Hello(usize);
    impl Greeter for Hello {
        fn greet(&self) -> String {
            "hello".repeat(self.0)
        }
    }

    #[test]
    fn register_create_and_list() {
        let mut reg: Registry<usize, dyn Greeter> = Registry::new("greeter");
        reg.register("hello", "says hello", |n| Ok(Box::new(Hello(*n))));
        assert_eq!(reg.create("hello", &2).unwrap().greet(), "hellohello");
        assert_eq!(reg.names(), vec!["hello"]);
        let err = reg.create("bye", &1).err().unwrap();
        assert_eq!(err.to_string(), "unknown greeter: bye");
    }
}

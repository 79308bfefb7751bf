NAME = "sqbattery"
VERSION = "0.1.0"

var exec = require('cordova/exec');

exports.check = function(success, failure) {
  exec(success, failure, 'RootCheck', 'check', []);
};

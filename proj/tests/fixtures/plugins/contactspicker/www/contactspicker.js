var exec = require('cordova/exec');

exports.pick = function(success, failure) {
  exec(success, failure, 'ContactsPicker', 'pick', []);
};
